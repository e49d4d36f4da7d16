#pragma once

// Coordinate systems on SL2(R): Iwasawa n[x]a[y]k[theta] and Cartan
// k[phi]a[e^{-rho}]k[vartheta] factorizations, the invariant measure in both
// systems, and finite-difference realizations of the Lie derivatives and the
// Casimir operator.

#include <complex>
#include <functional>

#include "sl2/quadrature.hpp"

namespace sl2 {

struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;

    double det() const { return a * d - b * c; }
    friend Mat2 operator*(const Mat2 &m, const Mat2 &n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    Mat2 inv() const {  // valid for det = 1
        return {d, -b, -c, a};
    }
};

inline Mat2 n_of(double x) { return {1, x, 0, 1}; }
inline Mat2 a_of(double y) { double s = std::sqrt(y); return {s, 0, 0, 1.0 / s}; }
inline Mat2 k_of(double th) {
    double c = std::cos(th), s = std::sin(th);
    return {c, s, -s, c};
}

struct Iwasawa {
    double x = 0;
    double y = 1;
    double theta = 0;  // in [0, 2*pi)
};

struct Cartan {
    double phi = 0;       // in [0, pi)
    double rho = 0;       // >= 0
    double vartheta = 0;  // in [0, 2*pi)
};

constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap_2pi(double t);

Iwasawa iwasawa_decompose(const Mat2 &g);   // throws on det != 1
Mat2 iwasawa_compose(const Iwasawa &c);     // throws on y <= 0
Cartan cartan_decompose(const Mat2 &g);     // throws on det != 1
Mat2 cartan_compose(const Cartan &c);

// point-pair invariant u(gi, i) = (a^2+b^2+c^2+d^2-2)/4
double point_pair_u(const Mat2 &g);

// ---------------------------------------------------------------------------
// integration

struct IwasawaBox {
    double x0 = 0, x1 = 0;
    double y0 = 1, y1 = 1;      // y0 > 0
    double th0 = 0, th1 = kTwoPi;
    bool empty() const { return x0 >= x1 || y0 >= y1 || th0 >= th1; }
};

enum class Scheme { Quadrature, MonteCarlo };

struct Estimate {
    double value = 0;
    double error = 0;
};

// integral of F over the box against dx dy dtheta / (2 pi y^2).
// Quadrature: composite GL panels, `budget` = panels per axis.
// MonteCarlo: `budget` samples drawn uniformly in (x, log y, theta) with the
// Jacobian reweighting 1/(2 pi y); sharded reduction is deterministic in seed.
Estimate haar_integrate(const std::function<double(const Mat2 &)> &F,
                        const IwasawaBox &box, Scheme scheme, long budget,
                        unsigned long long seed = 0);

// matrix-coordinate side: (1/pi) * Int F(a,c,d) da dc dd / |c| over the box
// [a0,a1] x [c0,c1] x [d0,d1] (c bounded away from 0), with b = (ad-1)/c.
Estimate haar_integrate_matrix(const std::function<double(double, double, double)> &F,
                               double a0, double a1, double c0, double c1,
                               double d0, double d1, long budget);

// ---------------------------------------------------------------------------
// differential operators

using GFun = std::function<cplx(const Mat2 &)>;

enum class LieDir { X1, X2, X3 };  // generators of N, A, K

// central finite difference of F along g exp(t X_j) at t = 0
cplx lie_derivative(const GFun &F, const Mat2 &g, LieDir which, double step = 1e-4);

// raising/lowering operators e^+ = 2i x1 + x2 - i x3, e^- = -2i x1 + x2 + i x3
cplx raising_apply(const GFun &F, const Mat2 &g, double step = 1e-4);
cplx lowering_apply(const GFun &F, const Mat2 &g, double step = 1e-4);

enum class CasimirForm { Iwasawa, Cartan };

struct CasimirResult {
    cplx value{0, 0};
    bool singularity_warning = false;  // Cartan form too close to rho = 0
};

// finite-difference Casimir: Iwasawa form -y^2 (dxx + dyy) + y dx dtheta, or
// the Cartan form in (phi, rho, vartheta)
CasimirResult casimir_apply(const GFun &F, const Mat2 &g,
                            CasimirForm form = CasimirForm::Iwasawa,
                            double step = 1e-3);

// Casimir assembled from -1/4 e+ e- + 1/4 x3^2 - 1/2 i x3 by nested finite
// differences (inner_step for the first-order pieces, outer_step for the
// second application)
cplx casimir_from_ladder(const GFun &F, const Mat2 &g, double inner_step = 1e-5,
                         double outer_step = 1e-4);

}  // namespace sl2
