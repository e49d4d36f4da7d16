#pragma once

// Counting engine: divisor sieve, shifted divisor correlations, progression
// density reports, brute-force determinant-equation counts, the main-term
// evaluator, and the K / R factors of the error budget.  The hot loops are
// OpenMP kernels; bit-identical serial reference implementations live in
// sl2::serial (see counting_serial.cpp) and are compared in the tests and
// the benchmark target.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "sl2/weights.hpp"

namespace sl2 {

inline constexpr double kTheta = 7.0 / 64.0;  // toward Selberg / Ramanujan

// exact d(n) for n <= x (multiple-marking sieve, segmented + OpenMP)
std::vector<uint16_t> divisor_sieve(i64 x);

// ---------------------------------------------------------------------------

enum class Profile { Sharp, SmoothBump };

// per-axis dyadic window on (|a|, |c|, |d|) in [A,2A] x [C,2C] x [D,2D]
struct Window {
    double A = 1, C = 1, D = 1;
    double B = 0;                // optional extra range on |b| (0 = free)
    Profile profile = Profile::Sharp;
    double delta = 0.1;          // transition width fraction for SmoothBump
    bool positive_octant = true; // restrict to a, c, d > 0

    double axis(double v, double R) const;
    double eval(double a, double c, double d) const;
    // Int axis(v, R) dv over (0, inf); and Int axis(v, C)/v dv
    double axis_integral(double R) const;
    double axis_integral_over_v() const;
    // triple integral Int W da dc dd / |c| over the allowed octants
    double haar_integral() const;
};

struct CountSpec {
    i64 q1 = 1, q2 = 1;
    i64 h = 1;                 // determinant ad - bc = h
    Window window;
    // weight on the solution matrix: exactly one of these is active
    std::optional<AlphaWeight> alpha;   // coset/character weight
    std::optional<PeriodicWeight> t_bc; // periodic weight applied to bc mod q
    i64 max_iterations = 1000000000;

    cplx weight(const IMat2 &m) const;
    i64 modulus() const { return q1 * q2; }
};

// sum over ad - bc = h of weight * window, looping (a, d) outer and c inner
// with the divisibility test c | ad - h; throws resource-limit past the cap
cplx det_eq_bruteforce(const CountSpec &spec);

// main term: orbit sum times the Haar volume of the window,
//   sum_{sigma in T_h^{(q1)}} sum_{tau in T} weight(tau sigma)
//     * Int W da dc dd/|c| / (h * zeta(2) q prod_{p|q}(1+1/p))
cplx main_term_eval(const CountSpec &spec);

// K = sum over the box |a| + |b| L + |c|/L + |d| <= 6 of
//     | sum_tau weight(tau) conj(weight(tau g)) |
double k_term_eval(const CountSpec &spec, double L);

// R = (1 + (AD)^{2 theta} (C/(A q2))^{2 theta}) (1 + (C/(A q2))^{1-2 theta})
//     + A/(C q1)
double r_term_eval(double A, double C, double D, i64 q1, i64 q2,
                   double theta = kTheta);
// the theta = 0 shape 1 + C/(A q2) + A/(C q1)
double r_term_simplified(double A, double C, double D, i64 q1, i64 q2);

// refined factors for the determinant-twist setting (formula evaluators; no
// numeric anchor beyond limits and monotonicity)
struct RExtended {
    double R0 = 0, R1 = 0, R2 = 0;
};
RExtended r_term_extended(double A, double C, double D, double H, double K,
                          i64 q1, i64 q2, double cond_chi, double norm_ratio,
                          double theta = kTheta, double vartheta = kTheta);

struct ErrorBudget {
    double AD = 0;
    double K_value = 0;
    double R_value = 0;
    double budget = 0;  // sqrt(AD * K * R)
    double theta = kTheta;
    double vartheta = kTheta;
};

struct BudgetReport {
    cplx S{0, 0};   // brute-force count
    cplx M{0, 0};   // main term
    ErrorBudget budget;
    double ratio = 0;  // |S - M| / budget
    bool pass = true;
};

BudgetReport error_budget(const CountSpec &spec, double ceiling = 10.0);

// ---------------------------------------------------------------------------
// divisor correlations

// sum_{n} G(n/X) d(n) d(n+h) t(n), sharp cutoff G = 1_{n <= X} or the smooth
// dyadic bump on [X, 2X]
cplx divisor_correlation(i64 x, i64 h, const PeriodicWeight &t, bool sharp,
                         double delta = 0.1);

struct DensityRow {
    i64 r = 0;
    double empirical = 0;
    double omega = 0;
    double deviation = 0;
};

struct DensityReport {
    std::vector<DensityRow> rows;
    double max_deviation = 0;
    i64 total_weight = 0;
};

// empirical share of sum_{n <= x, n = r (q)} d(n) d(n+h) against omega(r,h;q)
DensityReport ap_density_report(i64 x, i64 h, i64 q);

// single-threaded reference kernels, kept for equality tests and benchmarks
namespace serial {
std::vector<uint16_t> divisor_sieve(i64 x);
cplx det_eq_bruteforce(const CountSpec &spec);
cplx divisor_correlation(i64 x, i64 h, const PeriodicWeight &t, bool sharp,
                         double delta = 0.1);
}  // namespace serial

}  // namespace sl2
