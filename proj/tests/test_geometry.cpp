#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sl2/geometry.hpp"
#include "sl2/spectral.hpp"
#include "sl2/verify.hpp"

using namespace sl2;

static double mdist(const Mat2 &m, const Mat2 &n) {
    return std::max(std::max(std::abs(m.a - n.a), std::abs(m.b - n.b)),
                    std::max(std::abs(m.c - n.c), std::abs(m.d - n.d)));
}

TEST_CASE("iwasawa decomposition on known matrices") {
    Iwasawa id = iwasawa_decompose(Mat2{});
    CHECK(id.x == doctest::Approx(0.0));
    CHECK(id.y == doctest::Approx(1.0));
    CHECK(id.theta == doctest::Approx(0.0));

    // rotation by pi/2
    Iwasawa w = iwasawa_decompose(Mat2{0, 1, -1, 0});
    CHECK(w.x == doctest::Approx(0.0));
    CHECK(w.y == doctest::Approx(1.0));
    CHECK(w.theta == doctest::Approx(M_PI / 2));

    // n[2] a[4]
    Iwasawa v = iwasawa_decompose(Mat2{2, 1, 0, 0.5});
    CHECK(v.x == doctest::Approx(2.0));
    CHECK(v.y == doctest::Approx(4.0));
    CHECK(v.theta == doctest::Approx(0.0));

    CHECK_THROWS_AS(iwasawa_decompose(Mat2{2, 0, 0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(iwasawa_compose(Iwasawa{0, -1, 0}), std::invalid_argument);
}

TEST_CASE("iwasawa composition matches the matrix formula") {
    CHECK(mdist(iwasawa_compose({0, 1, 0}), Mat2{}) < 1e-15);
    CHECK(mdist(iwasawa_compose({0, 1, M_PI / 2}), Mat2{0, 1, -1, 0}) < 1e-15);
    CHECK(mdist(iwasawa_compose({2, 4, 0}), Mat2{2, 1, 0, 0.5}) < 1e-15);
}

TEST_CASE("roundtrips on random unit-determinant matrices") {
    RandomSL2R rng(101);
    double iw = 0, ca = 0, uu = 0;
    for (int i = 0; i < 5000; ++i) {
        Mat2 g = rng.sample();
        iw = std::max(iw, mdist(g, iwasawa_compose(iwasawa_decompose(g))));
        Cartan c = cartan_decompose(g);
        ca = std::max(ca, mdist(g, cartan_compose(c)));
        uu = std::max(uu, std::abs(std::cosh(c.rho) - 2 * point_pair_u(g) - 1));
        CHECK(c.rho >= 0);
        CHECK(c.phi >= 0);
        CHECK(c.phi < M_PI);
    }
    CHECK(iw < 1e-12);
    CHECK(ca < 1e-10);
    CHECK(uu < 1e-10);
}

TEST_CASE("cartan coordinates on known matrices") {
    // identity degenerates to phi = 0, vartheta = 0
    Cartan c0 = cartan_decompose(Mat2{});
    CHECK(c0.rho == doctest::Approx(0.0));
    CHECK(c0.phi == doctest::Approx(0.0));
    CHECK(c0.vartheta == doctest::Approx(0.0));
    // pure rotation folds into vartheta
    Cartan cr = cartan_decompose(k_of(1.1));
    CHECK(cr.phi == doctest::Approx(0.0));
    CHECK(cr.vartheta == doctest::Approx(1.1));
    // a[e^{-1}] is already in Cartan form
    Cartan ca = cartan_decompose(a_of(std::exp(-1.0)));
    CHECK(ca.rho == doctest::Approx(1.0));
    CHECK(std::abs(ca.phi) + std::abs(ca.vartheta) < 1e-12);
    // a[1] n[2]: cosh(rho) = 1 + 2^2/2 = 3
    Cartan cn = cartan_decompose(a_of(1.0) * n_of(2.0));
    CHECK(cn.rho == doctest::Approx(std::acosh(3.0)));
}

TEST_CASE("point-pair invariant") {
    CHECK(point_pair_u(Mat2{}) == doctest::Approx(0.0));
    CHECK(point_pair_u(Mat2{2, 1, 1, 1}) == doctest::Approx(1.25));
    for (double th : {0.3, 1.7, 4.4})
        CHECK(point_pair_u(k_of(th)) == doctest::Approx(0.0));
    // agreement with |gi - i|^2 / (4 Im gi)
    RandomSL2R rng(5);
    for (int i = 0; i < 50; ++i) {
        Mat2 g = rng.sample();
        Iwasawa w = iwasawa_decompose(g);
        double num = w.x * w.x + (w.y - 1) * (w.y - 1);
        CHECK(point_pair_u(g) == doctest::Approx(num / (4 * w.y)).epsilon(1e-12));
    }
}

TEST_CASE("haar integration") {
    auto one = [](const Mat2 &) { return 1.0; };
    IwasawaBox box{0, 1, 1, std::exp(1.0), 0, kTwoPi};
    Estimate est = haar_integrate(one, box, Scheme::Quadrature, 8);
    CHECK(est.value == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-9));
    // deterministic given the budget
    Estimate est2 = haar_integrate(one, box, Scheme::Quadrature, 8);
    CHECK(est.value == est2.value);
    // Monte Carlo reproducible in the seed, error estimate honest
    Estimate mc1 = haar_integrate(one, box, Scheme::MonteCarlo, 50000, 3);
    Estimate mc2 = haar_integrate(one, box, Scheme::MonteCarlo, 50000, 3);
    CHECK(mc1.value == mc2.value);
    CHECK(std::abs(mc1.value - est.value) < 6 * std::max(mc1.error, 1e-5));
    CHECK(haar_integrate(one, IwasawaBox{1, 1, 1, 2, 0, 1}, Scheme::Quadrature, 4).value ==
          0.0);
}

TEST_CASE("lie derivatives along the three subgroups") {
    GFun yfun = [](const Mat2 &g) { return cplx(iwasawa_decompose(g).y, 0); };
    CHECK(std::abs(lie_derivative(yfun, Mat2{}, LieDir::X2) - cplx(2, 0)) < 1e-7);
    GFun xfun = [](const Mat2 &g) { return cplx(iwasawa_decompose(g).x, 0); };
    CHECK(std::abs(lie_derivative(xfun, Mat2{}, LieDir::X1) - cplx(1, 0)) < 1e-8);
    GFun ph = [](const Mat2 &g) {
        double t = iwasawa_decompose(g).theta;
        return cplx(std::cos(t), std::sin(t));
    };
    CHECK(std::abs(lie_derivative(ph, Mat2{}, LieDir::X3) - cplx(0, 1)) < 1e-8);
    GFun cns = [](const Mat2 &) { return cplx(2.5, -1.0); };
    CHECK(std::abs(lie_derivative(cns, a_of(2.0), LieDir::X1)) == 0.0);
}

TEST_CASE("casimir eigenvalue and the ladder identity") {
    RandomSL2R rng(77);
    cplx nu(0.3, 0.0);
    for (int ell : {-2, 0, 1, 2}) {
        GFun phi = [=](const Mat2 &g) { return phi_basic(g, nu, ell); };
        cplx lam = cplx(0.25, 0) - nu * nu;
        for (int i = 0; i < 4; ++i) {
            Mat2 g = rng.sample();
            cplx ref = lam * phi(g);
            CHECK(std::abs(casimir_apply(phi, g).value - ref) <=
                  1e-4 * std::max(1.0, std::abs(ref)));
            CHECK(std::abs(casimir_from_ladder(phi, g) - ref) <=
                  1e-3 * std::max(1.0, std::abs(ref)));
        }
    }
    // constants are annihilated
    GFun c = [](const Mat2 &) { return cplx(3.3, 1.1); };
    CHECK(std::abs(casimir_apply(c, rng.sample()).value) < 1e-9);
    // singularity warning near rho = 0 in the Cartan chart
    CasimirResult res = casimir_apply(c, n_of(1e-5), CasimirForm::Cartan, 1e-3);
    CHECK(res.singularity_warning);
}

TEST_CASE("raising operator shifts the right type by two") {
    cplx nu(0.4, 0.1);
    GFun phi = [=](const Mat2 &g) { return phi_basic(g, nu, -1); };
    RandomSL2R rng(13);
    for (int i = 0; i < 5; ++i) {
        Mat2 g = rng.sample();
        double th = rng.uniform(0.2, 3.0);
        cplx lhs = raising_apply(phi, g * k_of(th));
        cplx rhs = std::exp(cplx(0, (-1 + 2) * th)) * raising_apply(phi, g);
        CHECK(std::abs(lhs - rhs) <= 1e-4 * (1 + std::abs(rhs)));
    }
}
