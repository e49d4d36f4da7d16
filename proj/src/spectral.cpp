#include "sl2/spectral.hpp"

#include "sl2/bump.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sl2 {

namespace {
const cplx I_UNIT{0.0, 1.0};

cplx cpow(double base, cplx e) {  // base > 0
    return std::exp(e * std::log(base));
}

cplx e_of(double x) {  // e(x) = exp(2 pi i x)
    double a = 2.0 * M_PI * x;
    return {std::cos(a), std::sin(a)};
}
}  // namespace

cplx phi_basic(const Mat2 &g, cplx nu, int ell) {
    Iwasawa w = iwasawa_decompose(g);
    return cpow(w.y, nu + 0.5) * e_of(ell * w.theta / (2.0 * M_PI));
}

// ---------------------------------------------------------------------------
// Jacquet integral

namespace {

// G(xi) = (xi^2+1)^{-nu-1/2} W(xi)^{m}, W = (xi-i)/(xi+i), m = sign*l/2.
// The logarithmic derivative is rational, R = A/(xi-i) + B/(xi+i) with
// A = m-nu-1/2, B = -(m+nu+1/2), so all derivatives of G are exact via
// Leibniz on G' = G R.
struct Gderiv {
    cplx nu;
    double m;
    int J;
    cplx A, B;

    Gderiv(cplx nu_, double m_, int J_) : nu(nu_), m(m_), J(J_) {
        A = cplx(m, 0) - nu - 0.5;
        B = -(cplx(m, 0) + nu + 0.5);
    }

    cplx value(double xi) const {
        // branch of arg W in (0, 2pi): W = ((xi^2-1) - 2 i xi)/(xi^2+1)
        double arg = std::atan2(-2.0 * xi, xi * xi - 1.0);
        if (arg <= 0) arg += 2.0 * M_PI;
        cplx lg = -(nu + 0.5) * std::log(xi * xi + 1.0) + cplx(0.0, m * arg);
        return std::exp(lg);
    }

    // fills d[0..J] with G, G', ..., G^{(J)}
    void derivs(double xi, cplx *d) const {
        d[0] = value(xi);
        cplx zm(xi, -1.0), zp(xi, 1.0);
        cplx R[8];
        cplx pm = 1.0 / zm, pp = 1.0 / zp;
        double fact = 1.0, sign = 1.0;
        for (int t = 0; t < J; ++t) {
            R[t] = sign * fact * (A * pm + B * pp);
            pm /= zm;
            pp /= zp;
            fact *= (t + 1);
            sign = -sign;
        }
        static const double binom[8][8] = {
            {1, 0, 0, 0, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0, 0, 0},
            {1, 2, 1, 0, 0, 0, 0, 0}, {1, 3, 3, 1, 0, 0, 0, 0},
            {1, 4, 6, 4, 1, 0, 0, 0}, {1, 5, 10, 10, 5, 1, 0, 0},
            {1, 6, 15, 20, 15, 6, 1, 0}, {1, 7, 21, 35, 35, 21, 7, 1}};
        for (int k = 0; k < J; ++k) {
            cplx s{0, 0};
            for (int j = 0; j <= k; ++j) s += binom[k][j] * d[j] * R[k - j];
            d[k + 1] = s;
        }
    }
};

}  // namespace

JacquetResult jacquet_apply(const Mat2 &g, cplx nu, int ell, int sign, double tol) {
    if (nu.real() < 0.25 - 1e-12)
        throw std::invalid_argument("jacquet_apply: requires Re nu >= 1/4");
    Iwasawa w = iwasawa_decompose(g);
    const double y = w.y;
    const double m = 0.5 * sign * ell;

    // each integration by parts gains a factor 1/(2 pi y) and one power of
    // xi-decay; J by the size of y
    int J = (y >= 0.75) ? 4 : (y >= 0.08) ? 3 : 2;
    Gderiv G(nu, m, J);

    const double damp = std::pow(2.0 * M_PI * y, J);
    double Xi = 16.0;
    cplx d[8];
    for (int it = 0; it < 48; ++it) {
        G.derivs(Xi, d);
        double mag = std::abs(d[J]);
        G.derivs(-Xi, d);
        mag = std::max(mag, std::abs(d[J]));
        double tail = 2.0 * mag * Xi / (2.0 * nu.real() + J - 1.0);
        if (tail / damp < 0.1 * tol) break;
        Xi *= 1.6;
    }

    // fixed-layout composite GL16 panels so nearby y produce smooth values;
    // the 0.4 cap keeps panels short next to the poles of G at xi = +-i
    double hp = std::min(0.5 / std::max(y, 0.05), 0.4);
    long panels = (long)std::ceil(2.0 * Xi / hp);
    if (panels > 4000000) panels = 4000000;
    double h = 2.0 * Xi / panels;
    cplx sum{0, 0};
    for (long p = 0; p < panels; ++p) {
        double a = -Xi + p * h;
        double mid = a + 0.5 * h, hl = 0.5 * h;
        cplx acc{0, 0};
        for (int i = 0; i < 8; ++i) {
            double x1 = mid + hl * gl16_x[i];
            double x2 = mid - hl * gl16_x[i];
            G.derivs(x1, d);
            cplx f1 = e_of(-y * x1) * d[J];
            G.derivs(x2, d);
            cplx f2 = e_of(-y * x2) * d[J];
            acc += gl16_w[i] * (f1 + f2);
        }
        sum += acc * hl;
    }
    // undo the integrations by parts
    cplx integral = sum / std::pow(2.0 * M_PI * I_UNIT * y, (double)J);

    JacquetResult out;
    G.derivs(Xi, d);
    out.tail_bound = 2.0 * std::abs(d[J]) * Xi / ((2.0 * nu.real() + J - 1.0) * damp);
    out.converged = out.tail_bound < tol;
    out.value = e_of(ell * w.theta / (2.0 * M_PI)) * e_of(sign * w.x) *
                cpow(y, 0.5) * cpow(y, -nu) * integral;
    return out;
}

double laguerre(int n, double alpha, double x) {
    if (n < 0) throw std::invalid_argument("laguerre: n must be >= 0");
    double l0 = 1.0;
    if (n == 0) return l0;
    double l1 = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        double l2 = ((2.0 * k + 1.0 + alpha - x) * l1 - (k + alpha) * l0) / (k + 1.0);
        l0 = l1;
        l1 = l2;
    }
    return l1;
}

double jacquet_discrete_series(double y, int k, int ell, int sign) {
    if (k < 1 || sign * ell < k || ((ell - k) % 2) != 0)
        throw std::invalid_argument("jacquet_discrete_series: need sign*l >= k, l = k mod 2");
    int n = (std::abs(ell) - k) / 2;
    double x = 4.0 * M_PI * y;
    double ratio = std::exp(std::lgamma(n + 1.0) - std::lgamma(n + (double)k));
    return std::pow(M_PI, 0.5 * k) * ratio * std::exp(-2.0 * M_PI * y) *
           std::pow(x, 0.5 * k) * laguerre(n, k - 1.0, x);
}

double laguerre_norm_sum(int n, int alpha) {
    if (alpha < 1) throw std::invalid_argument("laguerre_norm_sum: alpha must be >= 1");
    double s = 0;
    for (int i = 0; i <= n; ++i)
        s += std::exp(std::lgamma(i + (double)alpha) - std::lgamma(i + 1.0));
    return s;
}

// ---------------------------------------------------------------------------

cplx kernel_project_at(const KernelFn &k, int l1, int l2, const Mat2 &g, int n_theta) {
    double h = kTwoPi / n_theta;
    cplx s{0, 0};
    for (int i = 0; i < n_theta; ++i) {
        double t1 = i * h;
        Mat2 left = k_of(t1) * g;
        cplx inner{0, 0};
        for (int j = 0; j < n_theta; ++j) {
            double t2 = j * h;
            inner += k(left * k_of(t2)) * e_of(-(l2 * t2) / kTwoPi);
        }
        s += inner * e_of(-(l1 * t1) / kTwoPi);
    }
    return s / (double)((long)n_theta * n_theta);
}

KernelFn kernel_type_project(const KernelFn &k, int l1, int l2, int n_theta) {
    KernelFn out;
    out.support_rho = k.support_rho;
    double supp = k.support_rho;
    out.eval = [k, l1, l2, n_theta, supp](const Mat2 &g) -> cplx {
        Cartan c = cartan_decompose(g);
        if (c.rho > supp) return {0, 0};
        cplx radial = kernel_project_at(k, l1, l2, a_of(std::exp(-c.rho)), n_theta);
        return radial * e_of((l1 * c.phi + l2 * c.vartheta) / kTwoPi);
    };
    return out;
}

cplx abel_transform(const KernelFn &k, double y, double tol) {
    // a[y]n[x] has entry square sum y + y x^2 + 1/y = 2 cosh(rho)
    double lim = 2.0 * std::cosh(k.support_rho) - y - 1.0 / y;
    if (lim <= 0) return {0, 0};
    double xmax = std::sqrt(lim / y) + 1e-12;
    auto f = [&](double x) { return k(a_of(y) * n_of(x)); };
    return std::sqrt(y) * integrate_c(f, -xmax, xmax, tol).value;
}

cplx mellin_transform(const std::function<cplx(double)> &f_of_t, cplx s,
                      double t0, double t1, double tol) {
    auto f = [&](double t) { return f_of_t(t) * std::exp(s * t); };
    return integrate_c(f, t0, t1, tol).value;
}

cplx phi_transform(const KernelFn &k_ll, cplx nu, double tol) {
    double R = k_ll.support_rho;
    cplx nb = std::conj(nu);
    auto outer = [&](double t) -> cplx {
        double y = std::exp(t);
        // n[x]a[y] has entry square sum y + x^2/y + 1/y
        double lim = (2.0 * std::cosh(R) - y - 1.0 / y) * y;
        if (lim <= 0) return {0, 0};
        double xmax = std::sqrt(lim) + 1e-12;
        auto inner = [&](double x) { return k_ll(n_of(x) * a_of(y)); };
        return integrate_c(inner, -xmax, xmax, tol).value * std::exp(t * (nb - 0.5));
    };
    return integrate_c(outer, -R - 1e-9, R + 1e-9, tol).value;
}

cplx spherical_U(const Mat2 &g, cplx lambda, int ell, int n_nodes) {
    cplx nu = std::sqrt(cplx(0.25, 0.0) - lambda);
    double h = kTwoPi / n_nodes;
    cplx s{0, 0};
    for (int i = 0; i < n_nodes; ++i) {
        double t = i * h;
        s += phi_basic(k_of(-t) * g * k_of(t), nu, ell);
    }
    return s / (double)n_nodes;
}

// ---------------------------------------------------------------------------
// test kernel

namespace {

using sl2::bump_window;

double window(double x, double lo, double hi) { return bump_window(x, lo, hi); }

double rho_of(const Mat2 &g) {
    return std::acosh(std::max(1.0, 2.0 * point_pair_u(g) + 1.0));
}

}  // namespace

cplx TestKernel::f_hat(int ell) const {
    double lo = 1.0 / (2.0 * C * L), hi = 1.0 / (C * L);
    double parity = (kappa % 2 == 0) ? 1.0 : -1.0;
    auto f = [&](double t) -> cplx {
        double F = window(wrap_pi(t), lo, hi) + parity * window(wrap_pi(t - M_PI), lo, hi);
        return F * e_of(-(ell * t) / kTwoPi);
    };
    return integrate_c(f, -M_PI, M_PI, 1e-13).value / kTwoPi;
}

TestKernel build_test_kernel(double K, double L, int kappa, double C, bool autotune) {
    if (K < 1 || L < 1) throw std::invalid_argument("build_test_kernel: K, L >= 1");
    for (int attempt = 0; attempt < 8; ++attempt) {
        TestKernel tk;
        tk.K = K;
        tk.L = L;
        tk.C = C;
        tk.kappa = kappa;
        tk.rho0 = 1.0 / (C * K);
        double scale = C * C * C * C * K * K * L;
        double rlo = 1.0 / (2.0 * C * K), rhi = tk.rho0;
        double alo = 1.0 / (2.0 * C * L), ahi = 1.0 / (C * L);
        double parity = (kappa % 2 == 0) ? 1.0 : -1.0;
        tk.k0.support_rho = tk.rho0;
        tk.k0.eval = [=](const Mat2 &g) -> cplx {
            double rho = rho_of(g);
            if (rho >= rhi) return {0, 0};
            Cartan c = cartan_decompose(g);
            double ang = c.phi + c.vartheta;
            double F = window(wrap_pi(ang), alo, ahi) +
                       parity * window(wrap_pi(ang - M_PI), alo, ahi);
            return cplx{scale * window(rho, rlo, rhi) * F, 0.0};
        };
        // k = k0 * k0 by Cartan quadrature over the support of k0
        KernelFn k0 = tk.k0;
        double rho0 = tk.rho0;
        tk.k.support_rho = 2.0 * rho0;
        tk.k.eval = [k0, rho0](const Mat2 &h) -> cplx {
            if (rho_of(h) > 2.0 * rho0) return {0, 0};
            // dg = 2 pi sinh(rho) drho dk1 dk2 with unit-mass circle measures
            const int n_ang = 64, n_rad = 8;
            double ha = kTwoPi / n_ang;
            cplx s{0, 0};
            for (int i = 0; i < n_ang; ++i) {
                Mat2 kl = k_of(i * ha);
                for (int r = 0; r < n_rad; ++r) {
                    double rr = rho0 * (r + 0.5) / n_rad;
                    Mat2 mid = kl * a_of(std::exp(-rr));
                    double wt = std::sinh(rr) * (ha / kTwoPi) * (ha / kTwoPi) *
                                (rho0 / n_rad);
                    for (int j = 0; j < n_ang; ++j) {
                        Mat2 g = mid * k_of(j * ha);
                        cplx v = k0(g);
                        if (v == cplx{0, 0}) continue;
                        s += wt * v * k0(g.inv() * h);
                    }
                }
            }
            return kTwoPi * s;
        };
        if (!autotune) return tk;
        bool ok = true;
        for (int il = -(int)L; il <= (int)L && ok; ++il) {
            if (((il % 2) + 2) % 2 != kappa % 2) continue;
            for (double s = 0; s <= K + 1e-9 && ok; s += 0.5) {
                if (test_kernel_phi0(tk, il, cplx(s, 0)).real() < 1.0) ok = false;
                if (s != 0.0 && test_kernel_phi0(tk, il, cplx(0, s)).real() < 1.0) ok = false;
            }
        }
        if (ok) return tk;
        C *= 2.0;
    }
    throw std::runtime_error("build_test_kernel: grid check failed up to C cap");
}

cplx test_kernel_phi0(const TestKernel &tk, int ell, cplx nu) {
    // k0_{l,l}(g) = scale * f_hat(l) e^{il(phi+vartheta)} f(rho)
    cplx fh = tk.f_hat(ell);
    if (std::abs(fh) < 1e-300) return {0, 0};
    double scale = tk.C * tk.C * tk.C * tk.C * tk.K * tk.K * tk.L;
    double rlo = 1.0 / (2.0 * tk.C * tk.K), rhi = tk.rho0;
    KernelFn kproj;
    kproj.support_rho = tk.rho0;
    kproj.eval = [=](const Mat2 &g) -> cplx {
        double rho = rho_of(g);
        if (rho >= rhi) return {0, 0};
        Cartan c = cartan_decompose(g);
        return scale * window(rho, rlo, rhi) * e_of(ell * (c.phi + c.vartheta) / kTwoPi);
    };
    return fh * phi_transform(kproj, nu, 1e-9);
}

cplx test_kernel_phi_conv(const TestKernel &tk, int ell, cplx nu, int budget) {
    // Phi(k0*k0; nu) = Int Int k0(g) k0(h) conj(U(g h)) dg dh with U the type
    // (l,l) eigenfunction normalized at the identity.  Writing both factors
    // in Cartan coordinates (dg = 2 pi sinh r dr dk1 dk2 against unit-mass
    // circle measures), the two angular windows integrate to exact Fourier
    // coefficients and one free angle drops out, leaving
    //   (2 pi)^2 scale^2 fhat(l)^2 Int Int Int f(r) f(r') sinh r sinh r'
    //       e^{il psi} conj(U(a[e^-r] k[psi] a[e^-r'])) dr dr' dpsi / 2pi.
    cplx lambda = cplx(0.25, 0) - nu * nu;
    double scale = tk.C * tk.C * tk.C * tk.C * tk.K * tk.K * tk.L;
    double rlo = 1.0 / (2.0 * tk.C * tk.K), rhi = tk.rho0;
    const int n_panels = std::max(2, budget / 4);
    const int n_r = 16 * n_panels;
    const int n_psi = 8 * budget;
    const double hpsi = kTwoPi / n_psi;

    // radial Gauss-Legendre nodes on [0, rhi]
    std::vector<double> fw(n_r), rr(n_r);
    {
        double hp = rhi / n_panels;
        int idx = 0;
        for (int p = 0; p < n_panels; ++p) {
            double mid = (p + 0.5) * hp, hl = 0.5 * hp;
            for (int i = 0; i < 8; ++i)
                for (int sgn = -1; sgn <= 1; sgn += 2) {
                    double r = mid + sgn * hl * gl16_x[i];
                    rr[idx] = r;
                    fw[idx] = gl16_w[i] * hl * window(r, rlo, rhi) * std::sinh(r);
                    ++idx;
                }
        }
    }
    cplx total{0, 0};
#pragma omp parallel
    {
        cplx local{0, 0};
#pragma omp for schedule(dynamic) nowait
        for (int i = 0; i < n_r; ++i) {
            if (fw[i] == 0.0) continue;
            Mat2 left = a_of(std::exp(-rr[i]));
            for (int j = 0; j < n_r; ++j) {
                if (fw[j] == 0.0) continue;
                Mat2 right = a_of(std::exp(-rr[j]));
                cplx psi_sum{0, 0};
                for (int p = 0; p < n_psi; ++p) {
                    double psi = p * hpsi;
                    Mat2 m = left * k_of(psi) * right;
                    psi_sum += e_of(ell * psi / kTwoPi) *
                               std::conj(spherical_U(m, lambda, ell, 96));
                }
                local += fw[i] * fw[j] * psi_sum * (hpsi / kTwoPi);
            }
        }
#pragma omp critical
        total += local;
    }
    cplx fh = tk.f_hat(ell);
    return kTwoPi * kTwoPi * scale * scale * fh * fh * total;
}

}  // namespace sl2
