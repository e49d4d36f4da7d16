#include "sl2/weights.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "sl2/faults.hpp"

namespace sl2 {

std::string PeriodicWeight::to_json() const {
    nlohmann::ordered_json j;
    j["q"] = q;
    auto arr = nlohmann::ordered_json::array();
    for (const RatC &v : values) {
        arr.push_back({(i64)v.re.num, (i64)v.re.den, (i64)v.im.num, (i64)v.im.den});
    }
    j["values"] = arr;
    return j.dump();
}

PeriodicWeight PeriodicWeight::from_json(const std::string &text) {
    auto j = nlohmann::json::parse(text);
    PeriodicWeight t(j.at("q").get<i64>());
    auto &arr = j.at("values");
    if ((i64)arr.size() != t.q)
        throw std::invalid_argument("weight file: values length != q");
    for (i64 i = 0; i < t.q; ++i) {
        auto &e = arr[i];
        t.values[i] = RatC(Rat(e[0].get<i64>(), e[1].get<i64>()),
                           Rat(e[2].get<i64>(), e[3].get<i64>()));
    }
    return t;
}

Rat omega_weight(i64 r, i64 h, i64 q) {
    if (!is_squarefree(q)) throw std::domain_error("unsupported-modulus: q must be squarefree");
    if (gcd_i64(h, q) != 1) throw std::invalid_argument("gcd(h,q) must be 1");
    Rat w(1);
    bool drop = faults::flags().omega_local_factor;
    for (i64 p : prime_divisors(q)) {
        i64 denom_factor = drop ? p : (p + 1);
        if (mod_pos((i128)r % p * ((r + h) % p) % p, p) == 0)
            w *= Rat(2 * p - 1, p * denom_factor);
        else
            w *= Rat(p - 1, p * denom_factor);
    }
    return w;
}

Rat uh_weight(i64 r1, i64 r2, i64 h, i64 q) {
    if (!is_squarefree(q)) throw std::domain_error("unsupported-modulus: q must be squarefree");
    Rat w(1);
    for (i64 p : prime_divisors(q)) {
        i64 hits = 0;
        if (mod_pos(r1, p) == 0) ++hits;
        if (mod_pos(r2, p) == 0) ++hits;
        if (mod_pos(r2 + h, p) == 0) ++hits;
        if (mod_pos(r1 - r2, p) == 0) ++hits;
        w *= Rat(hits * p + 1, p);
    }
    return w;
}

Rat nh_norm(const PeriodicWeight &t, i64 h) {
    if (gcd_i64(h, t.q) != 1) throw std::invalid_argument("gcd(h,q) must be 1");
    std::vector<Rat> absv(t.q);
    for (i64 r = 0; r < t.q; ++r) absv[r] = t.values[r].abs_exact();
    Rat s;
    for (i64 r1 = 0; r1 < t.q; ++r1) {
        if (absv[r1].is_zero()) continue;
        for (i64 r2 = 0; r2 < t.q; ++r2) {
            if (absv[r2].is_zero()) continue;
            s += absv[r1] * absv[r2] * uh_weight(r1, r2, h, t.q);
        }
    }
    return s;
}

Rat balanced_u(i64 r, i64 q0) {
    Rat w(1);
    for (i64 p : prime_divisors(q0)) {
        if (mod_pos(r, p) == 0) w *= Rat(p - 1, p);
        else w *= Rat(-1, p);
    }
    return w;
}

std::map<i64, PeriodicWeight> balanced_decompose(const PeriodicWeight &t) {
    if (!is_squarefree(t.q)) throw std::domain_error("unsupported-modulus: q must be squarefree");
    std::map<i64, PeriodicWeight> out;
    for (i64 q0 : divisors(t.q)) {
        PeriodicWeight comp(q0);
        // coset averages t(r0; q0)
        std::vector<RatC> avg(q0);
        Rat scale(q0, t.q);
        for (i64 r = 0; r < t.q; ++r) {
            RatC v = t.values[r];
            avg[mod_pos(r, q0)] += RatC(v.re * scale, v.im * scale);
        }
        for (i64 n = 0; n < q0; ++n) {
            RatC s;
            for (i64 r0 = 0; r0 < q0; ++r0) {
                Rat u = balanced_u(n - r0, q0);
                s += RatC(avg[r0].re * u, avg[r0].im * u);
            }
            comp.values[n] = s;
        }
        out.emplace(q0, std::move(comp));
    }
    return out;
}

// ---------------------------------------------------------------------------

AlphaWeight AlphaWeight::principal(i64 q1, i64 q2) {
    AlphaWeight a;
    a.q1 = q1;
    a.q2 = q2;
    a.chi1 = a.psi1 = a.chi2 = a.psi2 = principal_char(1);
    return a;
}

AlphaWeight AlphaWeight::bc_indicator(i64 q, i64 r) {
    AlphaWeight a = principal(q, q);
    std::map<ProjPair, cplx> table;
    for (const CosetLabel &cl : enumerate_cosets(q, q)) {
        i64 bc = mod_pos((i64)(((i128)cl.lift.b * cl.lift.c) % q), q);
        table[cl.pair] = (bc == mod_pos(r, q)) ? cplx{1, 0} : cplx{0, 0};
    }
    a.alpha0 = std::move(table);
    return a;
}

cplx AlphaWeight::eval(const IMat2 &g) const {
    cplx v{1, 0};
    if (alpha0) {
        auto it = alpha0->find(project_matrix(g, q1, q2));
        if (it == alpha0->end()) return {0, 0};
        v = it->second;
        if (v == cplx{0, 0}) return v;
    }
    return v * chi1(g.a) * psi1(g.b) * chi2(g.c) * psi2(g.d);
}

namespace {
// extend a character to the larger squarefree modulus Q (exponents carried
// over, zero at new primes)
DirichletChar char_lift(const DirichletChar &chi, i64 Q) {
    DirichletChar out = principal_char(Q);
    for (size_t i = 0; i < out.primes.size(); ++i)
        for (size_t j = 0; j < chi.primes.size(); ++j)
            if (chi.primes[j] == out.primes[i]) out.expo[i] = chi.expo[j];
    return out;
}
}  // namespace

DirichletChar AlphaWeight::twist_char() const {
    i64 Q = q1 * q2 / gcd_i64(q1, q2);
    DirichletChar c = char_lift(chi1, Q) * char_lift(psi1, Q) *
                      char_lift(chi2, Q).conj() * char_lift(psi2, Q).conj();
    return c;
}

double AlphaWeight::alpha0_norm2() const {
    if (!alpha0) {
        double n = 0;
        for (const ProjPoint &t : enumerate_proj_line(q1))
            for (const ProjPoint &b : enumerate_proj_line(q2))
                if (proj_pair_in_image({t, b})) n += 1.0;
        return n;
    }
    double n = 0;
    for (auto &[k, v] : *alpha0) n += std::norm(v);
    return n;
}

cplx w_oracle(const IMat2 &sigma, const IMat2 &sigma1, const IMat2 &sigma2,
              const AlphaWeight &alpha, i64 max_index) {
    i64 index = 0;
    {
        i64 q = alpha.q1;
        for (i64 p : prime_divisors(alpha.q1)) q = q / p * (p + 1);
        i64 q2v = alpha.q2;
        for (i64 p : prime_divisors(alpha.q2)) q2v = q2v / p * (p + 1);
        index = q * q2v;  // upper bound |P1_q1| * |P1_q2|
    }
    if (index > max_index) throw std::length_error("resource-limit: coset index too large");
    cplx s{0, 0};
    for (const CosetLabel &cl : enumerate_cosets(alpha.q1, alpha.q2)) {
        cplx left = alpha.eval(cl.lift * sigma * sigma1);
        if (left == cplx{0, 0}) continue;
        s += left * std::conj(alpha.eval(cl.lift * sigma2));
    }
    return s;
}

cplx w_closed_form(const IMat2 &sigma, const AlphaWeight &alpha) {
    const i64 q1 = alpha.q1, q2 = alpha.q2;
    const i64 q0 = gcd_i64(q1, q2);
    // alpha0 read through labels; for the table this is a lookup, otherwise 1
    auto alpha0_at = [&](const ProjPair &p) -> cplx {
        if (!alpha.alpha0) return {1, 0};
        auto it = alpha.alpha0->find(p);
        return it == alpha.alpha0->end() ? cplx{0, 0} : it->second;
    };
    auto rowmul = [](i64 x, i64 y, const IMat2 &m, i64 q) {
        return std::pair<i64, i64>{mod_pos((i64)(((i128)x * m.a + (i128)y * m.c) % q), q),
                                   mod_pos((i64)(((i128)x * m.b + (i128)y * m.d) % q), q)};
    };
    cplx s{0, 0};
    auto top_pts = enumerate_proj_line(q1);
    auto bot_pts = enumerate_proj_line(q2);
    for (const ProjPoint &t : top_pts) {
        for (const ProjPoint &b : bot_pts) {
            if (q0 > 1) {
                i64 cross = mod_pos((i64)(((i128)t.x * b.y - (i128)t.y * b.x) % q0), q0);
                if (gcd_i64(cross, q0) != 1) continue;
            }
            ProjPair tau2{t, b};
            auto [ra, rb] = rowmul(t.x, t.y, sigma, q1);
            auto [rc, rd] = rowmul(b.x, b.y, sigma, q2);
            ProjPair moved{proj_canonicalize(q1, ra, rb), proj_canonicalize(q2, rc, rd)};
            cplx a0 = alpha0_at(moved) * std::conj(alpha0_at(tau2));
            if (a0 == cplx{0, 0}) continue;
            cplx chars = alpha.chi1(ra) * alpha.psi1(rb) * std::conj(alpha.chi1(t.x)) *
                         std::conj(alpha.psi1(t.y)) * alpha.chi2(rc) * alpha.psi2(rd) *
                         std::conj(alpha.chi2(b.x)) * std::conj(alpha.psi2(b.y));
            s += a0 * chars;
        }
    }
    return s;
}

double char_sum_bound_rhs(double bound, const DirichletChar &chi1,
                          const DirichletChar &psi1, const DirichletChar &chi2,
                          const DirichletChar &psi2, i64 Q1, i64 Q2, CharSumMode mode) {
    if (!is_squarefree(Q1) || !is_squarefree(Q2))
        throw std::domain_error("unsupported-modulus: moduli must be squarefree");
    const DirichletChar &x1 = (mode == CharSumMode::UpperRow) ? psi1 : chi1;
    const DirichletChar &x2 = (mode == CharSumMode::UpperRow) ? psi2 : chi2;
    i64 Q0 = gcd_i64(Q1, Q2);
    double v = bound * (double)Q1 * (double)Q2;
    for (i64 p : prime_divisors(Q1))
        if (Q0 % p != 0) v /= (double)x1.conductor_at(p);
    for (i64 p : prime_divisors(Q2))
        if (Q0 % p != 0) v /= (double)x2.conductor_at(p);
    for (i64 p : prime_divisors(Q0))
        v /= (double)std::max(x1.conductor_at(p), x2.conductor_at(p));
    return v;
}

double alpha_invariance_check(const AlphaWeight &alpha, int samples,
                              unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-3, 3), len(2, 5), pick(0, 1);
    DirichletChar chi = alpha.twist_char();
    auto rand_gamma = [&]() {
        IMat2 g;
        int L = len(rng);
        for (int i = 0; i < L; ++i) {
            if (pick(rng))
                g = g * IMat2{1, coef(rng) * alpha.q1, 0, 1};
            else
                g = g * IMat2{1, 0, coef(rng) * alpha.q2, 1};
        }
        if (pick(rng)) g = g * IMat2{-1, 0, 0, -1};
        return g;
    };
    auto rand_sl2 = [&]() {
        IMat2 g;
        int L = len(rng);
        for (int i = 0; i < L; ++i) {
            if (pick(rng)) g = g * IMat2{1, coef(rng), 0, 1};
            else g = g * IMat2{1, 0, coef(rng), 1};
        }
        return g;
    };
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
        IMat2 gamma = rand_gamma();
        IMat2 g = rand_sl2();
        cplx lhs = alpha.eval(gamma * g);
        cplx rhs = chi(gamma.a) * alpha.eval(g);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

// ---------------------------------------------------------------------------

bool seven_split_indicator(const IMat2 &g, const SevenSplit &s) {
    if (mod_pos(g.a, s.parts[0]) != 0) return false;
    if (mod_pos(g.b, s.parts[1]) != 0) return false;
    if (mod_pos(g.c, s.parts[2]) != 0) return false;
    if (mod_pos(g.d, s.parts[3]) != 0) return false;
    if (mod_pos(g.a, s.parts[4]) != 0 || mod_pos(g.d, s.parts[4]) != 0) return false;
    if (mod_pos(g.b, s.parts[5]) != 0 || mod_pos(g.c, s.parts[5]) != 0) return false;
    i128 prod = (i128)g.a * g.b % s.parts[6];
    prod = prod * g.c % s.parts[6];
    prod = prod * g.d % s.parts[6];
    if (s.parts[6] > 1 && gcd_i64(mod_pos((i64)prod, s.parts[6]), s.parts[6]) != 1) return false;
    return true;
}

std::vector<SevenSplit> enumerate_seven_splits(i64 q0) {
    if (!is_squarefree(q0)) throw std::domain_error("unsupported-modulus: q0 must be squarefree");
    std::vector<SevenSplit> out{SevenSplit{}};
    for (i64 p : prime_divisors(q0)) {
        std::vector<SevenSplit> next;
        next.reserve(out.size() * 7);
        for (const SevenSplit &s : out)
            for (int slot = 0; slot < 7; ++slot) {
                SevenSplit t = s;
                t.parts[slot] *= p;
                next.push_back(t);
            }
        out = std::move(next);
    }
    return out;
}

RatC balanced_alpha(const IMat2 &tau, const PeriodicWeight &tflat, i64 h,
                    const SevenSplit &s) {
    if (!seven_split_indicator(tau, s)) return RatC();
    i64 q0 = tflat.q;
    i64 ad = mod_pos((i64)(((i128)tau.a * tau.d) % q0), q0);
    return tflat.at(mod_pos(-h * ad, q0));
}

RatC balanced_correlation_sum(const PeriodicWeight &tflat, i64 h,
                              const SevenSplit &s, i64 b, int sign) {
    i64 Q1 = s.Q1(), Q2 = s.Q2();
    i64 e = sign >= 0 ? 1 : -1;
    IMat2 shift{e, b, 0, e};
    RatC sum;
    for (const CosetLabel &cl : enumerate_cosets(Q1, Q2)) {
        RatC left = balanced_alpha(cl.lift * shift, tflat, h, s);
        if (left.is_zero()) continue;
        sum += left * balanced_alpha(cl.lift, tflat, h, s).conj();
    }
    return sum;
}

}  // namespace sl2
