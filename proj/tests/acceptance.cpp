// Acceptance suite: every shipped guarantee, one pass/fail line each, at the
// stated tolerance.  Usage: acceptance [path-to-sl2kit] (the CLI path enables
// the negative-control criterion; without it that criterion is a failure).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "sl2/counting.hpp"
#include "sl2/geometry.hpp"
#include "sl2/spectral.hpp"
#include "sl2/verify.hpp"

using namespace sl2;

namespace {

int g_fail = 0;

void line(const char *name, bool pass, double value, double threshold, double secs) {
    std::printf("%s %-34s value=%-12.5g threshold=%-10.5g [%.1fs]\n",
                pass ? "PASS" : "FAIL", name, value, threshold, secs);
    std::fflush(stdout);
    if (!pass) ++g_fail;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double secs() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

double mdist(const Mat2 &m, const Mat2 &n) {
    return std::max(std::max(std::abs(m.a - n.a), std::abs(m.b - n.b)),
                    std::max(std::abs(m.c - n.c), std::abs(m.d - n.d)));
}

}  // namespace

// 1. coordinate roundtrips on 1e5 random matrices, under 5 s
static void criterion_roundtrips() {
    Timer t;
    RandomSL2R rng(2024);
    double iw = 0, ca = 0, uerr = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        Mat2 g = rng.sample();
        iw = std::max(iw, mdist(g, iwasawa_compose(iwasawa_decompose(g))));
        Cartan c = cartan_decompose(g);
        ca = std::max(ca, mdist(g, cartan_compose(c)));
        uerr = std::max(uerr, std::abs(std::cosh(c.rho) - 2 * point_pair_u(g) - 1));
    }
    double secs = t.secs();
    line("C01.iwasawa-roundtrip", iw <= 1e-12 && secs < 5.0, iw, 1e-12, secs);
    line("C01.cartan-roundtrip", ca <= 1e-10 && secs < 5.0, ca, 1e-10, secs);
    line("C02.cosh-rho-2u1", uerr <= 1e-10, uerr, 1e-10, secs);
}

// 3. Casimir eigenvalue for phi_l and the ladder operator identity
static void criterion_casimir() {
    Timer t;
    RandomSL2R rng(31);
    const cplx nus[4] = {cplx(0, 0), cplx(0.3, 0), cplx(0, 0.5), cplx(1, 0.5)};
    double worst = 0;
    int points = 0;
    while (points < 100) {
        Mat2 g = rng.sample();
        for (int ell = -2; ell <= 2; ++ell)
            for (const cplx &nu : nus) {
                GFun phi = [=](const Mat2 &h) { return phi_basic(h, nu, ell); };
                cplx ref = (cplx(0.25, 0) - nu * nu) * phi(g);
                cplx got = casimir_apply(phi, g).value;
                worst = std::max(worst, std::abs(got - ref) / std::max(1.0, std::abs(ref)));
            }
        points += 20;
    }
    line("C03.phi-casimir-eigen", worst <= 1e-4, worst, 1e-4, t.secs());

    Timer t2;
    double worst_l = 0;
    GFun f1 = [](const Mat2 &g) {
        Iwasawa w = iwasawa_decompose(g);
        return std::exp(-0.5 * point_pair_u(g)) *
               cplx(std::cos(2 * w.theta), std::sin(2 * w.theta));
    };
    GFun f2 = [](const Mat2 &g) {
        return cplx(std::exp(-0.4 * point_pair_u(g)) * (g.a + 0.3 * g.b), 0.2 * g.d);
    };
    for (const GFun &F : {f1, f2})
        for (int i = 0; i < 6; ++i) {
            Mat2 g = rng.sample();
            cplx iwv = casimir_apply(F, g).value;
            cplx lad = casimir_from_ladder(F, g);
            worst_l = std::max(worst_l, std::abs(lad - iwv) / (1.0 + std::abs(iwv)));
        }
    line("C03.ladder-identity", worst_l <= 1e-3, worst_l, 1e-3, t2.secs());
}

// 4. Jacquet eigen-relations and the discrete-series norm
static void criterion_jacquet() {
    Timer t;
    RandomSL2R rng(57);
    double worst = 0;
    int pts = 0;
    while (pts < 20) {
        Mat2 g = rng.sample();
        Iwasawa w = iwasawa_decompose(g);
        if (w.y < 0.3 || w.y > 3.0) continue;
        cplx nu(0.25 + 0.25 * rng.uniform(0, 1), 0.15 * rng.uniform(-1, 1));
        int ell = 2 * (pts % 3) - 2;
        int sgn = (pts % 2) ? 1 : -1;
        GFun A = [=](const Mat2 &h) { return jacquet_apply(h, nu, ell, sgn, 1e-11).value; };
        cplx val = A(g);
        // relative eigen-checks are meaningless next to a zero of the
        // transform; sample away from them on the natural scale
        if (std::abs(val) < 1e-2 * std::pow(w.y, 0.5 - nu.real())) continue;
        ++pts;
        cplx lam = cplx(0.25, 0) - nu * nu;
        cplx oh = casimir_apply(A, g, CasimirForm::Iwasawa, 2e-3).value;
        cplx oh2 = casimir_apply(A, g, CasimirForm::Iwasawa, 1e-3).value;
        cplx om = (4.0 * oh2 - oh) / 3.0;
        worst = std::max(worst, std::abs(om - lam * val) / std::abs(val));
        auto E = [&](double dx, double dt) {
            return A(iwasawa_compose({w.x + dx, w.y, w.theta + dt}));
        };
        double h = 2e-3;
        cplx dxx = (E(h, 0) - 2.0 * val + E(-h, 0)) / (h * h);
        worst = std::max(worst, std::abs(dxx + 4 * M_PI * M_PI * val) /
                                    (4 * M_PI * M_PI * std::abs(val)));
        cplx dtt = (E(0, h) - 2.0 * val + E(0, -h)) / (h * h);
        worst = std::max(worst, std::abs(dtt + (double)(ell * ell) * val) /
                                    (std::max(1.0, (double)(ell * ell)) * std::abs(val)));
    }
    line("C04.jacquet-eigen-relations", worst <= 1e-3, worst, 1e-3, t.secs());

    Timer t2;
    double worst_n = 0;
    for (int k = 2; k <= 8; ++k)
        for (int ell = k; ell <= 12; ell += 2) {
            int n = (ell - k) / 2;
            auto f = [&](double y) {
                double v = jacquet_discrete_series(y, k, ell, 1);
                return v * v / (y * y);
            };
            double got = integrate(f, 1e-9, 40.0, 1e-13).value;
            double pref = std::pow(M_PI, k) *
                          std::exp(2.0 * (std::lgamma(n + 1.0) - std::lgamma(n + (double)k)));
            double expect = pref * 4.0 * M_PI * laguerre_norm_sum(n, k - 1);
            worst_n = std::max(worst_n, std::abs(got - expect) / expect);
        }
    line("C04.discrete-series-norm", worst_n <= 1e-6, worst_n, 1e-6, t2.secs());
}

// 5. Phi = Mellin(Abel), the Abel convolution lemma, and the test kernel
static void criterion_transforms() {
    Timer t;
    Report rep;
    suite_spectral(rep, 7);
    double ma = 0, conv = 0, supp = 1, grid = 0, selfconv = 1;
    for (auto &c : rep.criteria) {
        if (c.name == "spectral.phi-mellin-abel") ma = c.value;
        if (c.name == "spectral.abel-convolution") conv = c.value / c.threshold * 1e-4;
        if (c.name == "spectral.test-kernel-support") supp = c.value;
        if (c.name == "spectral.test-kernel-grid") grid = c.value;
        if (c.name == "spectral.test-kernel-self-convolution") selfconv = c.value;
    }
    double secs = t.secs();
    line("C05.phi-mellin-abel", ma <= 1e-4, ma, 1e-4, secs);
    line("C05.abel-convolution", conv <= 1e-4, conv, 1e-4, secs);
    line("C05.test-kernel-support", supp == 0.0, supp, 0.0, secs);
    line("C05.test-kernel-grid", grid >= 1.0, grid, 1.0, secs);
    line("C05.self-convolution", selfconv <= 1e-4, selfconv, 1e-4, secs);
}

// 6. orbit layer: P1 sizes, BFS coset index, orbit swap sweep, under 60 s
static void criterion_orbits() {
    Timer t;
    i64 bad_sizes = 0;
    for (i64 q = 1; q <= 210; ++q) {
        if (!is_squarefree(q)) continue;
        i64 expect = q;
        for (i64 p : prime_divisors(q)) expect = expect / p * (p + 1);
        if ((i64)enumerate_proj_line(q).size() != expect) ++bad_sizes;
    }
    line("C06.proj-line-sizes", bad_sizes == 0, (double)bad_sizes, 0, t.secs());

    Timer t2;
    i64 bad_bfs = 0;
    for (i64 q1 = 1; q1 <= 30; ++q1)
        for (i64 q2 = 1; q1 * q2 <= 30; ++q2) {
            if (gcd_i64(q1, q2) != 1 || !is_squarefree(q1 * q2)) continue;
            i64 expect = (i64)enumerate_proj_line(q1).size() *
                         (i64)enumerate_proj_line(q2).size();
            if (coset_index_bfs(q1, q2) != expect) ++bad_bfs;
        }
    line("C06.coset-index-bfs", bad_bfs == 0, (double)bad_bfs, 0, t2.secs());

    Timer t3;
    i64 bad_swap = 0, tested = 0;
    for (i64 q1 = 1; q1 <= 500; ++q1)
        for (i64 q2 = 1; q1 * q2 <= 500; ++q2) {
            if (!is_squarefree(q1) || !is_squarefree(q2)) continue;
            for (i64 h = 1; h * q1 * q2 <= 500; ++h)
                for (i64 k = 1; h * k * q1 * q2 <= 500; ++k) {
                    if (gcd_i64(h, k * q1 * q2) != 1) continue;
                    i64 r1 = q1 / gcd_i64(k, q1), r2 = q2 / gcd_i64(k, q2);
                    if (gcd_i64(r1 * r2, k) != 1) continue;
                    ++tested;
                    if (!orbit_swap_check(h, k, q1, q2)) ++bad_swap;
                }
        }
    bool ok = bad_swap == 0 && t3.secs() < 60.0 && tested > 1000;
    line("C06.orbit-swap-sweep", ok, (double)bad_swap, 0, t3.secs());
}

// 7. w closed form against the coset-sum oracle
static void criterion_w() {
    Timer t;
    RandomSL2R rng(99);
    double worst = 0;
    for (auto [q1, q2] : {std::pair<i64, i64>{3, 3}, {3, 5}, {5, 5}}) {
        auto G1 = char_group(q1), G2 = char_group(q2);
        auto box = enumerate_box_sl2(1.0);
        for (int trial = 0; trial < 20; ++trial) {
            AlphaWeight a;
            a.q1 = q1;
            a.q2 = q2;
            a.chi1 = G1[(size_t)rng.uniform(0, (double)G1.size())];
            a.psi1 = G1[(size_t)rng.uniform(0, (double)G1.size())];
            a.chi2 = G2[(size_t)rng.uniform(0, (double)G2.size())];
            a.psi2 = G2[(size_t)rng.uniform(0, (double)G2.size())];
            for (const IMat2 &g : box)
                worst = std::max(worst, std::abs(w_oracle(g, a) - w_closed_form(g, a)));
        }
    }
    line("C07.w-closed-form", worst <= 1e-9, worst, 1e-9, t.secs());
}

// 8. omega is an exact probability measure
static void criterion_omega() {
    Timer t;
    i64 bad = 0;
    for (i64 q = 1; q <= 210; ++q) {
        if (!is_squarefree(q)) continue;
        int done = 0;
        for (i64 h = 1; done < 3; ++h) {
            if (gcd_i64(h, q) != 1) continue;
            ++done;
            Rat s;
            for (i64 r = 0; r < q; ++r) s += omega_weight(r, h, q);
            if (!(s == Rat(1))) ++bad;
        }
    }
    line("C08.omega-probability", bad == 0, (double)bad, 0, t.secs());
}

// 9. balanced decomposition: exact reconstruction + coset means
static void criterion_balanced() {
    Timer t;
    RandomSL2R rng(123);
    i64 bad = 0;
    for (i64 q : {6LL, 30LL, 105LL}) {
        for (int trial = 0; trial < 50; ++trial) {
            PeriodicWeight w(q);
            for (auto &v : w.values)
                v = RatC(Rat((i64)rng.uniform(-9, 10), (i64)rng.uniform(1, 6)),
                         Rat((i64)rng.uniform(-9, 10), (i64)rng.uniform(1, 6)));
            auto comps = balanced_decompose(w);
            for (i64 n = 0; n < q; ++n) {
                RatC s;
                for (auto &[q0, c] : comps) s += c.at(n);
                if (!(s == w.values[n])) ++bad;
            }
            for (auto &[q0, c] : comps)
                for (i64 d : divisors(q0)) {
                    if (d == q0) continue;
                    for (i64 j = 0; j < d; ++j) {
                        RatC mean;
                        for (i64 m = 0; m < q0 / d; ++m) mean += c.at(j + m * d);
                        if (!mean.is_zero()) ++bad;
                    }
                }
        }
    }
    line("C09.balanced-decomposition", bad == 0, (double)bad, 0, t.secs());
}

// 10. the worked blueprint: K <= 10 q for q in {5,7,11,13}
static void criterion_k_blueprint() {
    Timer t;
    double worst_ratio = 0;
    for (i64 q : {5LL, 7LL, 11LL, 13LL}) {
        for (i64 r = 1; r < q; ++r) {
            if (gcd_i64(mod_pos(r * (r + 1), q), q) != 1) continue;
            CountSpec spec;
            spec.q1 = spec.q2 = q;
            spec.alpha = AlphaWeight::bc_indicator(q, r);
            double kv = k_term_eval(spec, 1.0);
            worst_ratio = std::max(worst_ratio, kv / (double)q);
        }
    }
    line("C10.k-term-blueprint", worst_ratio <= 10.0, worst_ratio, 10.0, t.secs());
}

// 11. divisor-correlation densities at X = 1e6
static void criterion_density() {
    bool all = true;
    double worst = 0;
    for (auto [q, h] : {std::pair<i64, i64>{5, 1}, {5, 2}, {7, 1}, {7, 3}}) {
        Timer t;
        DensityReport r = ap_density_report(1000000, h, q);
        double secs = t.secs();
        worst = std::max(worst, r.max_deviation);
        if (r.max_deviation > 0.02 || secs >= 30.0) all = false;
        char name[64];
        std::snprintf(name, sizeof(name), "C11.density-q%lld-h%lld", q, h);
        line(name, r.max_deviation <= 0.02 && secs < 30.0, r.max_deviation, 0.02, secs);
    }
    (void)all;
    (void)worst;
}

// 12. determinant-equation end to end
static void criterion_end_to_end() {
    {
        Timer t;
        CountSpec spec;
        spec.window.A = spec.window.C = spec.window.D = 200;
        BudgetReport br = error_budget(spec);
        double dev = std::abs(br.S / br.M - cplx(1, 0));
        line("C12.untwisted-200", dev <= 0.2 && t.secs() < 60.0, dev, 0.2, t.secs());
    }
    {
        Timer t;
        CountSpec spec;
        spec.q1 = spec.q2 = 5;
        spec.h = 1;
        spec.window.A = spec.window.C = spec.window.D = 100;
        spec.alpha = AlphaWeight::bc_indicator(5, 1);
        BudgetReport br = error_budget(spec, 10.0);
        line("C12.twisted-q5-100", br.ratio <= 10.0 && t.secs() < 60.0, br.ratio, 10.0,
             t.secs());
    }
}

// 13. character-sum lemma with the logged empirical constant
static void criterion_char_sum() {
    Timer t;
    double worst = 0;
    int tuples = 0;
    for (i64 Q1 = 1; Q1 <= 35; ++Q1)
        for (i64 Q2 = 1; Q1 * Q2 <= 35; ++Q2) {
            if (!is_squarefree(Q1) || !is_squarefree(Q2)) continue;
            auto G1 = char_group(Q1), G2 = char_group(Q2);
            // stride through the tuple space; all tuples for small groups
            size_t step1 = G1.size() > 4 ? 3 : 1, step2 = G2.size() > 4 ? 3 : 1;
            for (size_t i1 = 0; i1 < G1.size(); i1 += step1)
                for (size_t j1 = 0; j1 < G1.size(); j1 += step1)
                    for (size_t i2 = 0; i2 < G2.size(); i2 += step2)
                        for (size_t j2 = 0; j2 < G2.size(); j2 += step2) {
                            AlphaWeight a;
                            a.q1 = Q1;
                            a.q2 = Q2;
                            a.chi1 = G1[i1];
                            a.psi1 = G1[j1];
                            a.chi2 = G2[i2];
                            a.psi2 = G2[j2];
                            i64 B = Q1 * Q2;
                            double lhs = 0;
                            for (i64 b = 1; b <= B; ++b)
                                for (int e : {1, -1})
                                    lhs += std::abs(w_closed_form(IMat2{e, b, 0, e}, a));
                            double rhs =
                                char_sum_bound_rhs((double)B, a.chi1, a.psi1, a.chi2,
                                                   a.psi2, Q1, Q2, CharSumMode::UpperRow);
                            worst = std::max(worst, lhs / rhs);
                            ++tuples;
                        }
        }
    std::printf("     C13 empirical constant %.4f over %d tuples\n", worst, tuples);
    line("C13.char-sum-lemma", worst <= 64.0, worst, 64.0, t.secs());
}

// 14. negative controls through the CLI
static void criterion_negative_controls(const char *cli) {
    Timer t;
    if (!cli) {
        line("C14.negative-controls", false, 1, 0, 0.0);
        return;
    }
    auto run = [&](const std::string &args) {
        std::string cmd = std::string(cli) + " " + args + " > /dev/null 2>&1";
        int rc = std::system(cmd.c_str());
        return WEXITSTATUS(rc);
    };
    bool ok = true;
    // clean suites pass
    ok &= run("verify --suite geometry") == 0;
    ok &= run("verify --suite counting") == 0;
    // injected faults force exit 1 in the matching suites
    ok &= run("verify --suite geometry --inject-fault iwasawa-x-sign") == 1;
    ok &= run("verify --suite spectral --inject-fault iwasawa-x-sign") == 1;
    ok &= run("verify --suite characters --inject-fault omega-local-factor") == 1;
    ok &= run("verify --suite counting --inject-fault omega-local-factor") == 1;
    ok &= run("verify --suite orbits --inject-fault proj-canonical") == 1;
    // bad flags exit 2
    ok &= run("count divisor --x 1000 --h 1 --q 4") == 2;
    ok &= run("verify --suite nonsense") == 2;
    line("C14.negative-controls", ok, ok ? 0 : 1, 0, t.secs());
}

int main(int argc, char **argv) {
    const char *cli = argc > 1 ? argv[1] : nullptr;
    criterion_roundtrips();
    criterion_casimir();
    criterion_jacquet();
    criterion_transforms();
    criterion_orbits();
    criterion_w();
    criterion_omega();
    criterion_balanced();
    criterion_k_blueprint();
    criterion_density();
    criterion_end_to_end();
    criterion_char_sum();
    criterion_negative_controls(cli);
    if (g_fail) {
        std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_fail);
        return 1;
    }
    std::printf("ACCEPTANCE: all criteria passed\n");
    return 0;
}
