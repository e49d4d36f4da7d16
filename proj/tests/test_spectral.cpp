#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sl2/bump.hpp"
#include "sl2/spectral.hpp"
#include "sl2/verify.hpp"

using namespace sl2;

TEST_CASE("phi_basic values") {
    CHECK(std::abs(phi_basic(Mat2{}, cplx(0.7, -0.2), 5) - cplx(1, 0)) < 1e-15);
    // n[x]a[y] with l = 0: y^{nu + 1/2}
    cplx nu(0.3, 0.4);
    Mat2 g = n_of(1.7) * a_of(2.5);
    cplx expect = std::exp((nu + 0.5) * std::log(2.5));
    CHECK(std::abs(phi_basic(g, nu, 0) - expect) < 1e-13);
    // k[pi/4], l = 2, nu = 0 -> e^{i pi/2} = i
    CHECK(std::abs(phi_basic(k_of(M_PI / 4), cplx(0, 0), 2) - cplx(0, 1)) < 1e-13);
}

TEST_CASE("laguerre recurrence and rodrigues cases") {
    CHECK(laguerre(0, 2.0, 1.3) == 1.0);
    CHECK(laguerre(1, 2.5, 0.7) == doctest::Approx(2.5 + 1 - 0.7));
    // L_2^{(a)}(x) = x^2/2 - (a+2)x + (a+1)(a+2)/2
    double a = 1.5, x = 0.9;
    CHECK(laguerre(2, a, x) ==
          doctest::Approx(0.5 * x * x - (a + 2) * x + 0.5 * (a + 1) * (a + 2)));
    // orthogonality spot check: n = m = 1, alpha = 0 integrates to 1
    auto f = [](double x) {
        return std::exp(-x) * laguerre(1, 0, x) * laguerre(1, 0, x);
    };
    CHECK(integrate(f, 0.0, 60.0, 1e-12).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("jacquet integral eigen-properties") {
    cplx nu(0.3, 0.1);
    int ell = 2, sgn = 1;
    Mat2 g = n_of(0.3) * a_of(1.2) * k_of(0.7);
    JacquetResult r = jacquet_apply(g, nu, ell, sgn, 1e-10);
    CHECK(r.converged);
    CHECK(r.tail_bound < 1e-10);
    // the prefactor structure: x and theta dependence is an exact phase
    Iwasawa w = iwasawa_decompose(g);
    Mat2 g2 = n_of(w.x + 0.37) * a_of(w.y) * k_of(w.theta);
    cplx ratio = jacquet_apply(g2, nu, ell, sgn, 1e-10).value / r.value;
    CHECK(std::abs(ratio - std::exp(cplx(0, 2 * M_PI * 0.37))) < 1e-9);
    Mat2 g3 = n_of(w.x) * a_of(w.y) * k_of(w.theta + 0.5);
    cplx ratio2 = jacquet_apply(g3, nu, ell, sgn, 1e-10).value / r.value;
    CHECK(std::abs(ratio2 - std::exp(cplx(0, ell * 0.5))) < 1e-9);
    // domain guard
    CHECK_THROWS_AS(jacquet_apply(g, cplx(0.1, 0), 0, 1), std::invalid_argument);
}

TEST_CASE("jacquet casimir eigenvalue by finite differences") {
    cplx nu(0.3, 0.0);
    GFun A = [&](const Mat2 &h) { return jacquet_apply(h, nu, 0, 1, 1e-11).value; };
    Mat2 g = a_of(0.9) * n_of(0.2);
    cplx val = A(g);
    cplx lam = cplx(0.25, 0) - nu * nu;
    cplx oh = casimir_apply(A, g, CasimirForm::Iwasawa, 2e-3).value;
    cplx oh2 = casimir_apply(A, g, CasimirForm::Iwasawa, 1e-3).value;
    cplx om = (4.0 * oh2 - oh) / 3.0;
    CHECK(std::abs(om - lam * val) <= 1e-3 * std::abs(val));
}

TEST_CASE("discrete series closed form") {
    // edge weight: Laguerre index 0
    double y = 0.6;
    double edge = jacquet_discrete_series(y, 2, 2, 1);
    double expect = M_PI * std::exp(std::lgamma(1.0) - std::lgamma(2.0)) *
                    std::exp(-2 * M_PI * y) * (4 * M_PI * y);
    CHECK(edge == doctest::Approx(expect).epsilon(1e-14));
    CHECK_THROWS_AS(jacquet_discrete_series(1.0, 3, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(jacquet_discrete_series(1.0, 2, 3, 1), std::invalid_argument);
    // norm integral against the exact orthogonality sum, k <= 8, l <= 12
    for (int k = 2; k <= 8; k += 2)
        for (int ell = k; ell <= 12; ell += 4) {
            int n = (ell - k) / 2;
            auto f = [&](double yy) {
                double v = jacquet_discrete_series(yy, k, ell, 1);
                return v * v / (yy * yy);
            };
            double got = integrate(f, 1e-9, 40.0, 1e-13).value;
            double pref =
                std::pow(M_PI, k) *
                std::exp(2.0 * (std::lgamma(n + 1.0) - std::lgamma(n + (double)k)));
            double expect_norm = pref * 4.0 * M_PI * laguerre_norm_sum(n, k - 1);
            CHECK(got == doctest::Approx(expect_norm).epsilon(1e-6));
        }
    // agreement with the integral route at nu = (k-1)/2 (k = 2, so nu = 1/2)
    for (double yy : {0.5, 1.3}) {
        cplx via = jacquet_apply(a_of(yy), cplx(0.5, 0), 4, 1, 1e-11).value;
        double closed = jacquet_discrete_series(yy, 2, 4, 1);
        CHECK(std::abs(via) == doctest::Approx(std::abs(closed)).epsilon(1e-6));
    }
}

TEST_CASE("kernel type projection") {
    KernelFn kf;
    kf.support_rho = 1.2;
    kf.eval = [](const Mat2 &g) -> cplx {
        Cartan c = cartan_decompose(g);
        if (c.rho > 1.2) return {0, 0};
        double ang = c.phi + c.vartheta;
        return std::exp(-c.rho) * cplx(std::cos(3 * ang), 0.4 * std::sin(ang));
    };
    Mat2 probe = k_of(0.9) * a_of(0.55) * k_of(2.0);
    // reconstruction over types
    cplx recon{0, 0};
    for (int l1 = -5; l1 <= 5; ++l1)
        for (int l2 = -5; l2 <= 5; ++l2) {
            if ((l1 - l2) % 2) continue;
            recon += kernel_project_at(kf, l1, l2, probe, 40);
        }
    CHECK(std::abs(recon - kf(probe)) < 1e-8);
    // equivariance of the projected kernel object
    KernelFn p = kernel_type_project(kf, 3, 3, 40);
    cplx lhs = p(k_of(0.4) * a_of(0.6) * k_of(1.3));
    cplx rhs = std::exp(cplx(0, 3 * (0.4 + 1.3))) * p(a_of(0.6));
    CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("abel and mellin transforms") {
    KernelFn gk;
    gk.support_rho = 8.0;
    gk.eval = [](const Mat2 &g) -> cplx {
        double y = g.a * g.a;        // g = a[y] n[x]
        double x = g.b / g.a;
        double t = std::log(y);
        return {std::exp(-(t * t + x * x)), 0};
    };
    double y0 = 0.8;
    cplx got = abel_transform(gk, y0, 1e-12);
    cplx expect = std::sqrt(y0) * std::exp(-std::pow(std::log(y0), 2)) * std::sqrt(M_PI);
    CHECK(std::abs(got - expect) < 1e-9);

    auto f = [](double t) { return cplx(std::exp(-t * t), 0); };
    cplx s(0.31, -0.45);
    CHECK(std::abs(mellin_transform(f, s, -9, 9, 1e-12) -
                   std::sqrt(M_PI) * std::exp(s * s / 4.0)) < 1e-10);
}

TEST_CASE("phi transform equals mellin of abel") {
    KernelFn k;
    k.support_rho = 1.0;
    k.eval = [](const Mat2 &g) -> cplx {
        Cartan c = cartan_decompose(g);
        if (c.rho >= 1.0) return {0, 0};
        return bump_window(c.rho, 0.3, 1.0) * std::exp(-c.rho) *
               std::exp(cplx(0, 2 * (c.phi + c.vartheta)));
    };
    for (cplx nu : {cplx(0.2, 0), cplx(0, 0.45)}) {
        cplx direct = phi_transform(k, nu, 1e-9);
        auto ab = [&](double t) { return abel_transform(k, std::exp(t), 1e-11); };
        cplx via = mellin_transform(ab, std::conj(nu), -1.05, 1.05, 1e-10);
        CHECK(std::abs(direct - via) < 1e-6);
    }
}

TEST_CASE("spherical function") {
    CHECK(std::abs(spherical_U(Mat2{}, cplx(0.3, 0.1), 4) - cplx(1, 0)) < 1e-13);
    // lambda = 0, l = 0 is the constant function
    RandomSL2R rng(2);
    for (int i = 0; i < 5; ++i)
        CHECK(std::abs(spherical_U(rng.sample(), cplx(0, 0), 0) - cplx(1, 0)) < 1e-12);
    // eigenfunction of the casimir operator
    cplx lam(0.21, 0.0);
    GFun U = [&](const Mat2 &g) { return spherical_U(g, lam, 2); };
    Mat2 g = a_of(0.7) * n_of(0.4);
    CHECK(std::abs(casimir_apply(U, g).value - lam * U(g)) <=
          1e-3 * std::max(1.0, std::abs(U(g))));
}

TEST_CASE("test kernel construction") {
    TestKernel tk = build_test_kernel(2.0, 2.0, 0, 4.0, false);
    // support: vanishes outside |a|+|b|+|c|+|d| <= 6
    RandomSL2R rng(8);
    for (int i = 0; i < 100; ++i) {
        Mat2 g = rng.sample();
        if (std::abs(g.a) + std::abs(g.b) + std::abs(g.c) + std::abs(g.d) > 6.0)
            CHECK(std::abs(tk.k(g)) == 0.0);
    }
    // angular Fourier coefficient symmetric and vanishing off-parity
    CHECK(std::abs(tk.f_hat(1)) < 1e-13);
    CHECK(std::abs(tk.f_hat(2) - tk.f_hat(-2)) < 1e-13);
    // the convolution-square identity at one parameter point
    cplx lhs = test_kernel_phi_conv(tk, 0, cplx(0.5, 0), 8);
    cplx rhs = test_kernel_phi0(tk, 0, cplx(0.5, 0));
    CHECK(std::abs(lhs - rhs * rhs) <= 2e-4 * std::abs(rhs * rhs));
}
