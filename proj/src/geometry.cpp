#include "sl2/geometry.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "sl2/faults.hpp"

namespace sl2 {

double wrap_2pi(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0) t += kTwoPi;
    if (t >= kTwoPi) t = 0;  // fmod can land exactly on 2*pi after the add
    return t;
}

static void require_unimodular(const Mat2 &g) {
    if (std::abs(g.det() - 1.0) > 1e-9 * (1.0 + std::abs(g.a * g.d) + std::abs(g.b * g.c)))
        throw std::invalid_argument("expected det = 1");
}

Iwasawa iwasawa_decompose(const Mat2 &g) {
    require_unimodular(g);
    double cd = g.c * g.c + g.d * g.d;
    if (cd == 0) throw std::invalid_argument("bottom row vanishes");
    Iwasawa w;
    w.x = (g.a * g.c + g.b * g.d) / cd;
    if (faults::flags().iwasawa_x_sign) w.x = -w.x;
    w.y = 1.0 / cd;
    // bottom row of n[x]a[y]k[theta] is (-sin/sqrt(y), cos/sqrt(y)); the
    // d = 0 boundary lands on theta = pi/2 or 3pi/2 by the sign of c
    w.theta = wrap_2pi(std::atan2(-g.c, g.d));
    return w;
}

Mat2 iwasawa_compose(const Iwasawa &w) {
    if (!(w.y > 0)) throw std::invalid_argument("y must be positive");
    double sy = std::sqrt(w.y);
    double ct = std::cos(w.theta), st = std::sin(w.theta);
    return {sy * ct - (w.x / sy) * st, sy * st + (w.x / sy) * ct,
            -st / sy, ct / sy};
}

double point_pair_u(const Mat2 &g) {
    return 0.25 * (g.a * g.a + g.b * g.b + g.c * g.c + g.d * g.d - 2.0);
}

Cartan cartan_decompose(const Mat2 &g) {
    require_unimodular(g);
    // conjugation into SU(1,1): alpha = (a+d+i(b-c))/2, beta = (a-d-i(b+c))/2,
    // alpha = e^{i(phi+vartheta)} cosh(rho/2), beta = -e^{i(phi-vartheta)} sinh(rho/2)
    cplx alpha(0.5 * (g.a + g.d), 0.5 * (g.b - g.c));
    cplx beta(0.5 * (g.a - g.d), -0.5 * (g.b + g.c));
    Cartan c;
    double sb = std::abs(beta);
    c.rho = 2.0 * std::asinh(sb);
    double sum = std::arg(alpha);  // phi + vartheta
    if (sb < 1e-14) {
        // rotation: fold everything into vartheta
        c.phi = 0.0;
        c.vartheta = wrap_2pi(sum);
        c.rho = 0.0;
        return c;
    }
    double diff = std::arg(-beta);  // phi - vartheta
    double phi = 0.5 * (sum + diff);
    double vth = 0.5 * (sum - diff);
    // (phi, vartheta) ~ (phi + pi, vartheta + pi); normalize phi into [0, pi)
    phi = std::fmod(phi, kTwoPi);
    if (phi < 0) phi += kTwoPi;
    while (phi >= M_PI) { phi -= M_PI; vth += M_PI; }
    c.phi = phi;
    c.vartheta = wrap_2pi(vth);
    return c;
}

Mat2 cartan_compose(const Cartan &c) {
    return k_of(c.phi) * a_of(std::exp(-c.rho)) * k_of(c.vartheta);
}

// ---------------------------------------------------------------------------

Estimate haar_integrate(const std::function<double(const Mat2 &)> &F,
                        const IwasawaBox &box, Scheme scheme, long budget,
                        unsigned long long seed) {
    if (box.empty()) {
        if (box.x0 == box.x1 || box.y0 == box.y1 || box.th0 == box.th1)
            return {0.0, 0.0};
        throw std::invalid_argument("haar_integrate: invalid box");
    }
    if (!(box.y0 > 0)) throw std::invalid_argument("haar_integrate: y must be positive");

    auto integrand = [&](double x, double y, double th) {
        return F(iwasawa_compose({x, y, th})) / (kTwoPi * y * y);
    };

    if (scheme == Scheme::Quadrature) {
        long n = std::max(1L, budget);
        auto run = [&](long m) {
            double hx = (box.x1 - box.x0) / m;
            double hy = (box.y1 - box.y0) / m;
            double ht = (box.th1 - box.th0) / m;
            double s = 0;
            for (long i = 0; i < m; ++i)
                for (long j = 0; j < m; ++j)
                    for (long k = 0; k < m; ++k) {
                        double ax = box.x0 + i * hx, bx = ax + hx;
                        double ay = box.y0 + j * hy, by = ay + hy;
                        double at = box.th0 + k * ht, bt = at + ht;
                        // 4-point GL per axis, tensorized
                        static const double q[2] = {0.3399810435848563, 0.8611363115940526};
                        static const double w[2] = {0.6521451548625461, 0.3478548451374538};
                        double mx = 0.5 * (ax + bx), rx = 0.5 * (bx - ax);
                        double my = 0.5 * (ay + by), ry = 0.5 * (by - ay);
                        double mt = 0.5 * (at + bt), rt = 0.5 * (bt - at);
                        double acc = 0;
                        for (int ii = 0; ii < 4; ++ii)
                            for (int jj = 0; jj < 4; ++jj)
                                for (int kk = 0; kk < 4; ++kk) {
                                    double xx = mx + rx * (ii < 2 ? q[ii] : -q[ii - 2]);
                                    double yy = my + ry * (jj < 2 ? q[jj] : -q[jj - 2]);
                                    double tt = mt + rt * (kk < 2 ? q[kk] : -q[kk - 2]);
                                    double ww = w[ii % 2] * w[jj % 2] * w[kk % 2];
                                    acc += ww * integrand(xx, yy, tt);
                                }
                        s += acc * rx * ry * rt;
                    }
            return s;
        };
        double coarse = run(std::max(1L, n / 2));
        double fine = run(n);
        return {fine, std::abs(fine - coarse)};
    }

    // Monte Carlo in (x, u = log y, theta); weight = 1/(2 pi y) per unit
    // (x,u,theta)-volume.  Deterministic sharding: fixed shard count, each
    // shard seeded independently, partial sums reduced in shard order.
    const int shards = 64;
    long per = std::max(1L, budget / shards);
    double u0 = std::log(box.y0), u1 = std::log(box.y1);
    double vol = (box.x1 - box.x0) * (u1 - u0) * (box.th1 - box.th0);
    std::vector<double> sums(shards, 0.0), sq(shards, 0.0);
#pragma omp parallel for schedule(static)
    for (int s = 0; s < shards; ++s) {
        std::mt19937_64 rng(seed * 2654435761ULL + 0x9e3779b97f4a7c15ULL * (s + 1));
        std::uniform_real_distribution<double> ux(box.x0, box.x1), uu(u0, u1),
            ut(box.th0, box.th1);
        double acc = 0, acc2 = 0;
        for (long i = 0; i < per; ++i) {
            double x = ux(rng), u = uu(rng), th = ut(rng);
            double y = std::exp(u);
            double v = F(iwasawa_compose({x, y, th})) / (kTwoPi * y);
            acc += v;
            acc2 += v * v;
        }
        sums[s] = acc;
        sq[s] = acc2;
    }
    double total = 0, total2 = 0;
    for (int s = 0; s < shards; ++s) { total += sums[s]; total2 += sq[s]; }
    long n = per * (long)shards;
    double mean = total / n;
    double var = std::max(0.0, total2 / n - mean * mean);
    return {vol * mean, vol * std::sqrt(var / n)};
}

Estimate haar_integrate_matrix(const std::function<double(double, double, double)> &F,
                               double a0, double a1, double c0, double c1,
                               double d0, double d1, long budget) {
    if (a0 >= a1 || c0 >= c1 || d0 >= d1) return {0.0, 0.0};
    if (c0 <= 0 && c1 >= 0) throw std::invalid_argument("c range must avoid 0");
    long n = std::max(1L, budget);
    auto run = [&](long m) {
        double s = 0;
        double ha = (a1 - a0) / m, hc = (c1 - c0) / m, hd = (d1 - d0) / m;
        for (long i = 0; i < m; ++i)
            for (long j = 0; j < m; ++j)
                for (long k = 0; k < m; ++k) {
                    double a = a0 + (i + 0.5) * ha;
                    double c = c0 + (j + 0.5) * hc;
                    double d = d0 + (k + 0.5) * hd;
                    s += F(a, c, d) / std::abs(c) * ha * hc * hd;
                }
        return s / M_PI;
    };
    double coarse = run(std::max(1L, n / 2));
    double fine = run(n);
    return {fine, std::abs(fine - coarse)};
}

// ---------------------------------------------------------------------------

static Mat2 exp_dir(LieDir which, double t) {
    switch (which) {
        case LieDir::X1: return n_of(t);
        case LieDir::X2: return a_of(std::exp(2.0 * t));
        case LieDir::X3: return k_of(t);
    }
    return {};
}

cplx lie_derivative(const GFun &F, const Mat2 &g, LieDir which, double step) {
    return (F(g * exp_dir(which, step)) - F(g * exp_dir(which, -step))) / (2.0 * step);
}

cplx raising_apply(const GFun &F, const Mat2 &g, double step) {
    const cplx i(0, 1);
    cplx x1 = lie_derivative(F, g, LieDir::X1, step);
    cplx x2 = lie_derivative(F, g, LieDir::X2, step);
    cplx x3 = lie_derivative(F, g, LieDir::X3, step);
    return 2.0 * i * x1 + x2 - i * x3;
}

cplx lowering_apply(const GFun &F, const Mat2 &g, double step) {
    const cplx i(0, 1);
    cplx x1 = lie_derivative(F, g, LieDir::X1, step);
    cplx x2 = lie_derivative(F, g, LieDir::X2, step);
    cplx x3 = lie_derivative(F, g, LieDir::X3, step);
    return -2.0 * i * x1 + x2 + i * x3;
}

CasimirResult casimir_apply(const GFun &F, const Mat2 &g, CasimirForm form, double h) {
    CasimirResult out;
    if (form == CasimirForm::Iwasawa) {
        Iwasawa w = iwasawa_decompose(g);
        auto E = [&](double dx, double dy, double dt) {
            return F(iwasawa_compose({w.x + dx, w.y + dy, w.theta + dt}));
        };
        cplx f0 = E(0, 0, 0);
        cplx dxx = (E(h, 0, 0) - 2.0 * f0 + E(-h, 0, 0)) / (h * h);
        cplx dyy = (E(0, h, 0) - 2.0 * f0 + E(0, -h, 0)) / (h * h);
        cplx dxt = (E(h, 0, h) - E(h, 0, -h) - E(-h, 0, h) + E(-h, 0, -h)) / (4.0 * h * h);
        out.value = -w.y * w.y * (dxx + dyy) + w.y * dxt;
        return out;
    }
    Cartan c = cartan_decompose(g);
    if (c.rho < 10.0 * h) out.singularity_warning = true;
    auto E = [&](double dp, double dr, double dv) {
        return F(cartan_compose({c.phi + dp, c.rho + dr, c.vartheta + dv}));
    };
    cplx f0 = E(0, 0, 0);
    cplx dr = (E(0, h, 0) - E(0, -h, 0)) / (2.0 * h);
    cplx drr = (E(0, h, 0) - 2.0 * f0 + E(0, -h, 0)) / (h * h);
    cplx dpp = (E(h, 0, 0) - 2.0 * f0 + E(-h, 0, 0)) / (h * h);
    cplx dvv = (E(0, 0, h) - 2.0 * f0 + E(0, 0, -h)) / (h * h);
    cplx dpv = (E(h, 0, h) - E(h, 0, -h) - E(-h, 0, h) + E(-h, 0, -h)) / (4.0 * h * h);
    double sh = std::sinh(c.rho), th = std::tanh(c.rho);
    out.value = -drr - dr / th - dpp / (4.0 * sh * sh) + dpv / (2.0 * sh * th) -
                dvv / (4.0 * sh * sh);
    return out;
}

cplx casimir_from_ladder(const GFun &F, const Mat2 &g, double inner_step,
                         double outer_step) {
    const cplx i(0, 1);
    GFun lower = [&](const Mat2 &h) { return lowering_apply(F, h, inner_step); };
    cplx epem = raising_apply(lower, g, outer_step);
    Iwasawa w = iwasawa_decompose(g);
    auto E = [&](double dt) { return F(iwasawa_compose({w.x, w.y, w.theta + dt})); };
    double h = outer_step;
    cplx x3sq = (E(h) - 2.0 * F(g) + E(-h)) / (h * h);
    cplx x3 = (E(h) - E(-h)) / (2.0 * h);
    return -0.25 * epem + 0.25 * x3sq - 0.5 * i * x3;
}

}  // namespace sl2
