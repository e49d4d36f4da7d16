#include "sl2/counting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sl2/bump.hpp"
#include "sl2/quadrature.hpp"

namespace sl2 {

std::vector<uint16_t> divisor_sieve(i64 x) {
    if (x < 1) throw std::invalid_argument("divisor_sieve: x must be >= 1");
    if (x > 100000000) throw std::length_error("resource-limit: x > 1e8");
    std::vector<uint16_t> d(x + 1, 0);
    const i64 seg = std::max<i64>(1 << 20, x / 64 + 1);
    const i64 nseg = (x + seg) / seg;
#pragma omp parallel for schedule(dynamic)
    for (i64 s = 0; s < nseg; ++s) {
        i64 lo = s * seg + 1, hi = std::min<i64>(x, (s + 1) * seg);
        for (i64 i = 1; i <= hi; ++i) {
            i64 start = ((lo + i - 1) / i) * i;
            for (i64 j = start; j <= hi; j += i) d[j]++;
        }
    }
    return d;
}

// ---------------------------------------------------------------------------

double Window::axis(double v, double R) const {
    v = std::abs(v);
    if (profile == Profile::Sharp) return (v >= R && v <= 2.0 * R) ? 1.0 : 0.0;
    // smooth dyadic bump on [R, 2R] with transition width delta * R
    double w = delta * R;
    return smoothstep((v - R) / w) * smoothstep((2.0 * R - v) / w);
}

double Window::eval(double a, double c, double d) const {
    if (positive_octant && (a <= 0 || c <= 0 || d <= 0)) return 0.0;
    return axis(a, A) * axis(c, C) * axis(d, D);
}

double Window::axis_integral(double R) const {
    if (profile == Profile::Sharp) return R;
    auto f = [&](double v) { return axis(v, R); };
    return integrate(f, R * (1.0 - delta), 2.0 * R * (1.0 + delta), 1e-12).value;
}

double Window::axis_integral_over_v() const {
    if (profile == Profile::Sharp) return std::log(2.0);
    auto f = [&](double v) { return axis(v, C) / v; };
    return integrate(f, C * (1.0 - delta), 2.0 * C * (1.0 + delta), 1e-12).value;
}

double Window::haar_integral() const {
    double base = axis_integral(A) * axis_integral_over_v() * axis_integral(D);
    return positive_octant ? base : 8.0 * base;
}

cplx CountSpec::weight(const IMat2 &m) const {
    if (alpha) return alpha->eval(m);
    if (t_bc) {
        const RatC &v = t_bc->at(mod_pos((i64)(((i128)m.b * m.c) % t_bc->q), t_bc->q));
        return {v.re.to_double(), v.im.to_double()};
    }
    return {1.0, 0.0};
}

// ---------------------------------------------------------------------------

namespace {

struct AxisRange {
    i64 lo, hi;  // integer values of |v| in the window support
};

AxisRange axis_range(const Window &w, double R) {
    double slack = (w.profile == Profile::Sharp) ? 0.0 : w.delta * R;
    i64 lo = (i64)std::ceil(R - slack - 1e-9);
    i64 hi = (i64)std::floor(2.0 * R + slack + 1e-9);
    return {std::max<i64>(lo, 1), hi};
}

// shared loop for the serial and parallel versions; iterates the (a, d)
// plane in shards of `a` values, reduction in fixed shard order
cplx brute_force_impl(const CountSpec &spec, bool parallel) {
    const Window &w = spec.window;
    AxisRange ra = axis_range(w, w.A), rc = axis_range(w, w.C), rd = axis_range(w, w.D);
    int signs = w.positive_octant ? 1 : 2;
    i64 spanA = (ra.hi - ra.lo + 1) * signs;
    i64 iters = spanA * (rd.hi - rd.lo + 1) * (rc.hi - rc.lo + 1) * signs * signs;
    if (iters > spec.max_iterations || iters < 0)
        throw std::length_error("resource-limit: iteration cap exceeded");

    const int shards = 128;
    std::vector<cplx> partial(shards, cplx{0, 0});
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int s = 0; s < shards; ++s) {
        cplx acc{0, 0};
        for (i64 ia = s; ia < spanA; ia += shards) {
            i64 a = ra.lo + (ia % (ra.hi - ra.lo + 1));
            if (ia >= ra.hi - ra.lo + 1) a = -a;
            for (int sd = 0; sd < signs; ++sd)
                for (i64 dd = rd.lo; dd <= rd.hi; ++dd) {
                    i64 d = sd ? -dd : dd;
                    i64 ad = a * d;
                    for (int sc = 0; sc < signs; ++sc)
                        for (i64 cc = rc.lo; cc <= rc.hi; ++cc) {
                            i64 c = sc ? -cc : cc;
                            i64 num = ad - spec.h;
                            if (num % c) continue;
                            i64 b = num / c;
                            double win = w.eval(std::abs((double)a), (double)cc, (double)dd);
                            if (win == 0.0) continue;
                            if (w.B > 0) {
                                if (w.positive_octant && b <= 0) continue;
                                win *= w.axis((double)b, w.B);
                                if (win == 0.0) continue;
                            }
                            IMat2 m{a, b, c, d};
                            cplx wt = spec.weight(m);
                            if (wt != cplx{0, 0}) acc += win * wt;
                        }
                }
        }
        partial[s] = acc;
    }
    cplx total{0, 0};
    for (int s = 0; s < shards; ++s) total += partial[s];
    return total;
}

}  // namespace

cplx det_eq_bruteforce(const CountSpec &spec) { return brute_force_impl(spec, true); }

namespace serial {
cplx det_eq_bruteforce(const CountSpec &spec) { return brute_force_impl(spec, false); }
}  // namespace serial

// ---------------------------------------------------------------------------

cplx main_term_eval(const CountSpec &spec) {
    if (spec.alpha) {
        DirichletChar chi = spec.alpha->twist_char();
        if (!chi.is_principal()) return {0, 0};
    }
    i64 q = spec.modulus();
    if (gcd_i64(spec.h, q) != 1)
        throw std::invalid_argument("main_term_eval: gcd(h, q1 q2) must be 1");
    cplx orbit_sum{0, 0};
    auto cosets = enumerate_cosets(spec.q1, spec.q2);
    for (const IMat2 &sigma : hecke_reps_h(spec.h, spec.q1))
        for (const CosetLabel &cl : cosets) orbit_sum += spec.weight(cl.lift * sigma);
    double norm = 1.644934066848226436472415166646;  // zeta(2)
    norm *= (double)q;
    for (i64 p : prime_divisors(q)) norm *= 1.0 + 1.0 / (double)p;
    norm *= (double)spec.h;
    return orbit_sum * spec.window.haar_integral() / norm;
}

double k_term_eval(const CountSpec &spec, double L) {
    auto cosets = enumerate_cosets(spec.q1, spec.q2);
    std::vector<IMat2> box = enumerate_box_sl2(L);
    std::vector<cplx> wt(cosets.size());
    for (size_t i = 0; i < cosets.size(); ++i) wt[i] = spec.weight(cosets[i].lift);
    double total = 0;
#pragma omp parallel for reduction(+ : total) schedule(dynamic)
    for (size_t ig = 0; ig < box.size(); ++ig) {
        cplx s{0, 0};
        for (size_t i = 0; i < cosets.size(); ++i) {
            if (wt[i] == cplx{0, 0}) continue;
            s += wt[i] * std::conj(spec.weight(cosets[i].lift * box[ig]));
        }
        total += std::abs(s);
    }
    return total;
}

double r_term_eval(double A, double C, double D, i64 q1, i64 q2, double theta) {
    (void)D;
    double ratio2 = C / (A * (double)q2);
    double AD = A * D;
    return (1.0 + std::pow(AD, 2.0 * theta) * std::pow(ratio2, 2.0 * theta)) *
               (1.0 + std::pow(ratio2, 1.0 - 2.0 * theta)) +
           A / (C * (double)q1);
}

double r_term_simplified(double A, double C, double D, i64 q1, i64 q2) {
    (void)D;
    return 1.0 + C / (A * (double)q2) + A / (C * (double)q1);
}

RExtended r_term_extended(double A, double C, double D, double H, double K,
                          i64 q1, i64 q2, double cond_chi, double norm_ratio,
                          double theta, double vartheta) {
    RExtended r;
    r.R0 = norm_ratio * std::sqrt(A) / std::sqrt((double)q1 * C);
    r.R1 = norm_ratio * std::pow(H, vartheta) *
           (1.0 + std::pow(C * D / (H * K * (double)q2), theta)) *
           (1.0 + std::pow(cond_chi, 0.25) *
                      std::pow(C / (A * (double)q2), 0.5 - theta));
    r.R2 = (1.0 + std::pow(C * D / (K * (double)q2), theta)) *
           (1.0 + std::pow(cond_chi, 0.25) *
                      std::pow(H * C / (A * (double)q2), 0.5 - theta));
    return r;
}

BudgetReport error_budget(const CountSpec &spec, double ceiling) {
    BudgetReport rep;
    rep.S = det_eq_bruteforce(spec);
    rep.M = main_term_eval(spec);
    const Window &w = spec.window;
    rep.budget.AD = w.A * w.D;
    rep.budget.K_value = k_term_eval(spec, w.C / w.D);
    rep.budget.R_value = r_term_eval(w.A, w.C, w.D, spec.q1, spec.q2);
    rep.budget.budget = std::sqrt(rep.budget.AD * rep.budget.K_value * rep.budget.R_value);
    double dev = std::abs(rep.S - rep.M);
    rep.ratio = rep.budget.budget > 0 ? dev / rep.budget.budget : (dev > 0 ? 1e300 : 0.0);
    rep.pass = rep.ratio <= ceiling;
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

cplx correlation_impl(i64 x, i64 h, const PeriodicWeight &t, bool sharp,
                      double delta, bool parallel) {
    if (h < 1 || h > x) throw std::invalid_argument("divisor_correlation: need 1 <= h <= x");
    i64 top = sharp ? x + h : 2 * x + h;
    std::vector<uint16_t> d =
        parallel ? divisor_sieve(top) : serial::divisor_sieve(top);
    std::vector<cplx> tv(t.q);
    for (i64 r = 0; r < t.q; ++r)
        tv[r] = {t.values[r].re.to_double(), t.values[r].im.to_double()};
    Window smooth;
    smooth.A = (double)x;
    smooth.profile = Profile::SmoothBump;
    smooth.delta = delta;

    const int shards = 64;
    i64 n_hi = sharp ? x : (i64)std::floor(2.0 * x * (1.0 + delta));
    std::vector<cplx> partial(shards, cplx{0, 0});
#pragma omp parallel for schedule(static) if (parallel)
    for (int s = 0; s < shards; ++s) {
        cplx acc{0, 0};
        i64 lo = 1 + s * ((n_hi) / shards), hi = (s + 1 == shards) ? n_hi : (s + 1) * (n_hi / shards);
        if (s > 0) lo = s * (n_hi / shards) + 1;
        for (i64 n = lo; n <= hi; ++n) {
            double g = sharp ? 1.0 : smooth.axis((double)n, (double)x);
            if (g == 0.0) continue;
            acc += g * (double)((i64)d[n] * d[n + h]) * tv[n % t.q];
        }
        partial[s] = acc;
    }
    cplx total{0, 0};
    for (int s = 0; s < shards; ++s) total += partial[s];
    return total;
}

}  // namespace

cplx divisor_correlation(i64 x, i64 h, const PeriodicWeight &t, bool sharp, double delta) {
    return correlation_impl(x, h, t, sharp, delta, true);
}

namespace serial {
cplx divisor_correlation(i64 x, i64 h, const PeriodicWeight &t, bool sharp, double delta) {
    return correlation_impl(x, h, t, sharp, delta, false);
}
}  // namespace serial

DensityReport ap_density_report(i64 x, i64 h, i64 q) {
    if (!is_squarefree(q)) throw std::domain_error("unsupported-modulus: q must be squarefree");
    if (gcd_i64(h, q) != 1) throw std::invalid_argument("gcd(h,q) must be 1");
    // dyadic window x < n <= 2x, matching the [X, 2X] support of the
    // correlation cutoffs; the low range skews the shares visibly at desk scale
    std::vector<uint16_t> d = divisor_sieve(2 * x + h);
    std::vector<i64> count(q, 0);
    const int shards = 64;
    std::vector<std::vector<i64>> part(shards, std::vector<i64>(q, 0));
#pragma omp parallel for schedule(static)
    for (int s = 0; s < shards; ++s) {
        auto &loc = part[s];
        for (i64 n = x + 1 + s; n <= 2 * x; n += shards) loc[n % q] += (i64)d[n] * d[n + h];
    }
    for (int s = 0; s < shards; ++s)
        for (i64 r = 0; r < q; ++r) count[r] += part[s][r];
    DensityReport rep;
    i64 total = 0;
    for (i64 r = 0; r < q; ++r) total += count[r];
    rep.total_weight = total;
    for (i64 r = 0; r < q; ++r) {
        DensityRow row;
        row.r = r;
        row.empirical = total ? (double)count[r] / (double)total : 0.0;
        row.omega = omega_weight(r, h, q).to_double();
        row.deviation = std::abs(row.empirical - row.omega);
        rep.max_deviation = std::max(rep.max_deviation, row.deviation);
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace sl2
