#pragma once

// 1D quadrature building blocks: a G7/K15 adaptive integrator for real and
// complex integrands, fixed Gauss-Legendre panels for oscillatory sums with
// externally chosen panel sizes, and the periodic trapezoid rule (spectrally
// accurate for smooth periodic integrands).

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace sl2 {

using cplx = std::complex<double>;

// Gauss 7 / Kronrod 15 node-weight table on [-1,1]
// column 0: abscissa, column 1: Gauss weight, column 2: Kronrod weight
inline constexpr double gk15_nodes[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0,               0.204432940075298},
    {0.586087235467691, 0.0,               0.169004726639267},
    {0.864864423359769, 0.0,               0.104790010322250},
    {0.991455371120813, 0.0,               0.022935322010529},
};

template <class F, class R>
R gk15_panel(const F &f, double a, double b, double &err) {
    const double mid = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    R y0 = f(mid);
    R g7 = gk15_nodes[0][1] * y0;
    R k15 = gk15_nodes[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        double dx = hl * gk15_nodes[i][0];
        R yi = f(mid + dx) + f(mid - dx);
        g7 += gk15_nodes[i][1] * yi;
        k15 += gk15_nodes[i][2] * yi;
    }
    g7 *= hl;
    k15 *= hl;
    err = std::abs(g7 - k15);
    err = 200.0 * err * std::sqrt(err);
    return k15;
}

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evals = 0;
};

struct QuadResultC {
    cplx value{0.0, 0.0};
    double error = 0.0;
    long evals = 0;
};

namespace detail {

inline constexpr long kMaxQuadEvals = 4000000;

template <class R, class F>
void adapt(const F &f, double a, double b, double tol, int depth, R &sum,
           double &errsum, long &evals) {
    double err;
    R v = gk15_panel<F, R>(f, a, b, err);
    evals += 15;
    if (err <= tol || depth >= 30 || evals > kMaxQuadEvals) {
        sum += v;
        errsum += err;
        return;
    }
    double mid = 0.5 * (a + b);
    adapt<R>(f, a, mid, tol * 0.5, depth + 1, sum, errsum, evals);
    adapt<R>(f, mid, b, tol * 0.5, depth + 1, sum, errsum, evals);
}

}  // namespace detail

template <class F>
QuadResult integrate(const F &f, double a, double b, double tol = 1e-10) {
    QuadResult r;
    detail::adapt<double>(f, a, b, tol, 0, r.value, r.error, r.evals);
    return r;
}

template <class F>
QuadResultC integrate_c(const F &f, double a, double b, double tol = 1e-10) {
    QuadResultC r;
    detail::adapt<cplx>(f, a, b, tol, 0, r.value, r.error, r.evals);
    return r;
}

// trapezoid over one full period of a periodic integrand
template <class F>
cplx trapezoid_periodic(const F &f, double period, int n) {
    cplx s{0.0, 0.0};
    double h = period / n;
    for (int i = 0; i < n; ++i) s += f(i * h);
    return s * h;
}

// fixed 16-point Gauss-Legendre panel (for uniform composite rules where the
// node layout must not depend on the evaluation point)
inline constexpr double gl16_x[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499,
};
inline constexpr double gl16_w[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541,
};

template <class F, class R>
R gl16_panel(const F &f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    R s = R{};
    for (int i = 0; i < 8; ++i) {
        double dx = hl * gl16_x[i];
        s += gl16_w[i] * (f(mid + dx) + f(mid - dx));
    }
    return s * hl;
}

}  // namespace sl2
