#pragma once

// Harmonic-analysis objects: the basic eigenfunctions phi_l(g,nu), the
// Jacquet integral transform and its discrete-series Laguerre closed form,
// type projections of kernels, the Abel and Mellin transforms, the spectral
// transform Phi, the spherical function U, and the self-convolved test
// kernel used by the mean-value bound.

#include <complex>
#include <functional>

#include "sl2/geometry.hpp"

namespace sl2 {

// phi_l(g, nu) = y^{nu + 1/2} e^{i l theta} in Iwasawa coordinates
cplx phi_basic(const Mat2 &g, cplx nu, int ell);

// ---------------------------------------------------------------------------
// Jacquet operator
//
//   A^{s} phi_l(g,nu) = e^{il theta} e(s x) y^{1/2-nu}
//                       Int e(-y xi) (xi^2+1)^{-nu-1/2} W(xi)^{s l/2} d xi,
//   W(xi) = (xi-i)/(xi+i), branch cut along the positive reals for odd l.
//
// The integral is evaluated after J integrations by parts against e(-y xi)
// (G has explicit rational logarithmic derivative, so the derivatives G^(J)
// are exact), then truncated with a monotone tail estimate.  Guaranteed for
// Re nu >= 1/4.

struct JacquetResult {
    cplx value{0, 0};
    double tail_bound = 0;  // estimated truncation error
    bool converged = true;
};

JacquetResult jacquet_apply(const Mat2 &g, cplx nu, int ell, int sign,
                            double tol = 1e-9);

// generalized Laguerre polynomial by the three-term recurrence
double laguerre(int n, double alpha, double x);

// |A^{sign} phi_l(a[y], (k-1)/2)| by the closed form
//   pi^{k/2} Gamma(n+1)/Gamma(n+k) e^{-2 pi y} (4 pi y)^{k/2} L_n^{(k-1)}(4 pi y),
// n = (|l|-k)/2; the unimodular phase is dropped.  Requires sign*l >= k > 0
// and l = k (mod 2).
double jacquet_discrete_series(double y, int k, int ell, int sign);

// exact second moment sum_{i<=n} Gamma(i+alpha)/Gamma(i+1) for the weighted
// Laguerre norm Int x^{alpha-1} e^{-x} L_n^{(alpha)}(x)^2 dx (alpha >= 1)
double laguerre_norm_sum(int n, int alpha);

// ---------------------------------------------------------------------------
// kernels

struct KernelFn {
    std::function<cplx(const Mat2 &)> eval;
    double support_rho = 0;  // eval vanishes for rho(g) > support_rho

    cplx operator()(const Mat2 &g) const { return eval(g); }
};

// the (l1,l2) projection evaluated at one point by the defining double
// circle average
cplx kernel_project_at(const KernelFn &k, int l1, int l2, const Mat2 &g,
                       int n_theta = 64);

// projection as a kernel; the returned evaluator is exactly of type (l1,l2)
// (phase from the Cartan angles times a radial circle-average)
KernelFn kernel_type_project(const KernelFn &k, int l1, int l2, int n_theta = 64);

// A k(a[y]) = y^{1/2} Int k(a[y] n[x]) dx, truncated by the rho-support
cplx abel_transform(const KernelFn &k, double y, double tol = 1e-10);

// M f(s) = Int f(a[e^t]) e^{t s} dt over [t0, t1]
cplx mellin_transform(const std::function<cplx(double)> &f_of_t, cplx s,
                      double t0, double t1, double tol = 1e-10);

// Phi_{l,l}(k; nu) = Int_G k(h) conj(phi_l(h,nu)) dh for a kernel already of
// type (l,l); reduces to  Int Int k(n[x] a[e^t]) e^{t(conj(nu) - 1/2)} dx dt
cplx phi_transform(const KernelFn &k_ll, cplx nu, double tol = 1e-8);

// unique type-(l,l) eigenfunction with value 1 at the identity,
// eigenvalue lambda = 1/4 - nu^2; circle average of phi_l
cplx spherical_U(const Mat2 &g, cplx lambda, int ell, int n_nodes = 256);

// ---------------------------------------------------------------------------
// self-convolved test kernel k = k0 * k0 with
//   k0(g) = C^4 K^2 L f(rho) F(phi + vartheta),
// f a bump equal to 1 on [-1/(2CK), 1/(2CK)] supported in [-1/(CK), 1/(CK)],
// F 2pi-periodic with F(x+pi) = (-1)^kappa F(x), bump windows of width 1/(CL)

struct TestKernel {
    double K = 1, L = 1, C = 4;
    int kappa = 0;
    double rho0 = 0;       // support radius of k0
    KernelFn k0;
    KernelFn k;            // k0 * k0 by quadrature (support radius 2*rho0)

    // Fourier coefficient of the angular window
    cplx f_hat(int ell) const;
};

// builds the kernel; when autotune is set, C doubles until
// Phi(k0, nu) >= 1 on the grid |nu| <= K (real and imaginary),
// |l| <= L, l = kappa (mod 2)
TestKernel build_test_kernel(double K, double L, int kappa, double C = 4.0,
                             bool autotune = true);

// Phi_{l,l}(k0; nu) via the exact angular Fourier factor and a 2D quadrature
// (real-valued for nu real or purely imaginary)
cplx test_kernel_phi0(const TestKernel &tk, int ell, cplx nu);

// direct Phi_{l,l}(k0 * k0; nu) through the convolution quadrature; budget
// scales the node counts
cplx test_kernel_phi_conv(const TestKernel &tk, int ell, cplx nu, int budget = 12);

}  // namespace sl2
