#include "sl2/orbits.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "sl2/faults.hpp"

namespace sl2 {

std::string IMat2::str() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ";" +
           std::to_string(c) + "," + std::to_string(d) + ")";
}

// ---------------------------------------------------------------------------
// projective line

ProjPoint proj_canonicalize(i64 q, i64 x, i64 y) {
    if (q < 1) throw std::invalid_argument("modulus must be positive");
    x = mod_pos(x, q);
    y = mod_pos(y, q);
    if (q == 1) return {1, 0, 0};
    if (gcd_i64(gcd_i64(x, y), q) != 1)
        throw std::invalid_argument("point has nonunit content");
    if (faults::flags().proj_canonical) return {q, x, y};
    i64 cx = 0, cy = 0, m = 1;
    for (auto &[p, e] : factorize(q)) {
        i64 pk = 1;
        for (int i = 0; i < e; ++i) pk *= p;
        i64 xp = x % pk, yp = y % pk, nx, ny;
        if (yp % p != 0) {  // y invertible: normal form (x/y, 1)
            nx = mul_mod(xp, inv_mod(yp, pk), pk);
            ny = 1;
        } else {            // p | y forces x invertible: normal form (1, y/x)
            nx = 1;
            ny = mul_mod(yp, inv_mod(xp, pk), pk);
        }
        if (m == 1) { cx = nx; cy = ny; m = pk; }
        else {
            cx = crt2(cx, m, nx, pk);
            cy = crt2(cy, m, ny, pk);
            m *= pk;
        }
    }
    return {q, cx, cy};
}

std::vector<ProjPoint> enumerate_proj_line(i64 q) {
    if (q < 1) throw std::invalid_argument("modulus must be positive");
    if (!is_squarefree(q)) throw std::domain_error("unsupported-modulus: q must be squarefree");
    std::vector<std::pair<i64, i64>> pts{{0, 0}};  // residues mod m
    i64 m = 1;
    for (i64 p : prime_divisors(q)) {
        std::vector<std::pair<i64, i64>> local;
        for (i64 x = 0; x < p; ++x) local.push_back({x, 1});
        local.push_back({1, 0});
        std::vector<std::pair<i64, i64>> next;
        next.reserve(pts.size() * local.size());
        for (auto &[x0, y0] : pts)
            for (auto &[x1, y1] : local) {
                if (m == 1) next.push_back({x1, y1});
                else next.push_back({crt2(x0, m, x1, p), crt2(y0, m, y1, p)});
            }
        pts = std::move(next);
        m *= p;
    }
    std::vector<ProjPoint> out;
    out.reserve(pts.size());
    for (auto &[x, y] : pts) out.push_back(proj_canonicalize(q, x, y));
    std::sort(out.begin(), out.end());
    return out;
}

ProjPair project_matrix(const IMat2 &g, i64 q1, i64 q2) {
    if (gcd_i64(gcd_i64(g.a, g.b), q1) != 1 || gcd_i64(gcd_i64(g.c, g.d), q2) != 1)
        throw std::invalid_argument("row content not coprime to modulus");
    return {proj_canonicalize(q1, g.a, g.b), proj_canonicalize(q2, g.c, g.d)};
}

bool proj_pair_in_image(const ProjPair &p) {
    i64 q0 = gcd_i64(p.top.q, p.bottom.q);
    if (q0 == 1) return true;
    i64 cross = mod_pos((i64)(((i128)p.top.x * p.bottom.y - (i128)p.top.y * p.bottom.x) % q0), q0);
    return gcd_i64(cross, q0) == 1;
}

// ---------------------------------------------------------------------------
// canonical lift
//
// Build integer rows (a,b) = lambda1 (a2,b2) mod q1, (c,d) = lambda2 (c2,d2)
// mod q2 with ad - bc = 1 exactly.  The bottom row is first fixed modulo
// lcm(q1,q2) so that a2 d - b2 c = 1 mod every prime power of q1 (possible by
// the image condition), then made primitive, and the top row is completed by
// the extended Euclid algorithm plus a unique shift t mod q1.

IMat2 lift_proj_pair(const ProjPair &p) {
    const i64 q1 = p.top.q, q2 = p.bottom.q;
    if (!proj_pair_in_image(p)) throw std::domain_error("not-in-image");

    i64 a2 = p.top.x, b2 = p.top.y;
    i64 c2 = p.bottom.x, d2 = p.bottom.y;
    const i64 q0 = gcd_i64(q1, q2);

    if (q0 > 1) {
        // scale the bottom row by a unit lambda mod q2 with
        // lambda * (a2 d2 - b2 c2) = 1 mod q0
        i64 cross = mod_pos((i64)(((i128)a2 * d2 - (i128)b2 * c2) % q0), q0);
        i64 lam0 = inv_mod(cross, q0);
        i64 lam = 0, m = 1;
        for (auto &[pp, e] : factorize(q2)) {
            i64 pk = 1;
            for (int i = 0; i < e; ++i) pk *= pp;
            i64 r = (q0 % pp == 0) ? (lam0 % pk) : 1;
            if (m == 1) { lam = r; m = pk; }
            else { lam = crt2(lam, m, r, pk); m *= pk; }
        }
        c2 = mul_mod(c2, lam, q2);
        d2 = mul_mod(d2, lam, q2);
    }

    // bottom row modulo each prime power of lcm(q1,q2)
    i64 c = 0, d = 0, Q = 1;
    {
        auto f1 = factorize(q1);
        auto f2 = factorize(q2);
        std::map<i64, std::pair<int, int>> expo;
        for (auto &[pp, e] : f1) expo[pp].first = e;
        for (auto &[pp, e] : f2) expo[pp].second = e;
        bool first = true;
        for (auto &[pp, ee] : expo) {
            auto [e1, e2] = ee;
            int E = std::max(e1, e2);
            i64 pE = 1;
            for (int i = 0; i < E; ++i) pE *= pp;
            i64 cp, dp;
            if (e2 == 0) {
                // p divides q1 only: force a2 d - b2 c = 1 mod p^e1
                if (a2 % pp != 0) { cp = 0; dp = inv_mod(a2, pE); }
                else { cp = mod_pos(-inv_mod(b2, pE), pE); dp = 0; }
            } else {
                i64 pe2 = 1;
                for (int i = 0; i < e2; ++i) pe2 *= pp;
                cp = mod_pos(c2, pe2);
                dp = mod_pos(d2, pe2);
                if (e1 > e2) {
                    // extend so that a2 d - b2 c = 1 mod p^e1 (it already
                    // holds mod p^e2 after the lambda scaling)
                    i64 v = mod_pos((i64)(((i128)a2 * dp - (i128)b2 * cp) % pE), pE);
                    i64 rem = pE / pe2;
                    if ((1 - v) % pe2 != 0) throw std::logic_error("lift: inconsistent scaling");
                    i64 w = mod_pos(((1 - v) / pe2) % rem, rem);
                    if (a2 % pp != 0) dp = mod_pos(dp + pe2 * mul_mod(w, inv_mod(a2, rem), rem), pE);
                    else cp = mod_pos(cp - pe2 * mul_mod(w, inv_mod(b2, rem), rem), pE);
                }
            }
            if (first) { c = cp; d = dp; Q = pE; first = false; }
            else { c = crt2(c, Q, cp, pE); d = crt2(d, Q, dp, pE); Q *= pE; }
        }
    }

    // primitive integer representative of the bottom row
    if (Q == 1) { c = 0; d = 1; }
    if (c == 0 && d == 0) { d = 1; }     // q1 = q2 = 1 only
    if (c == 0 && std::abs(d) != 1) c = Q;
    if (c != 0) {
        i64 j = 0;
        while (gcd_i64(c, d + j * Q) != 1) ++j;  // terminates: units exist mod every p | c
        d += j * Q;
    }

    // top row: particular solution a0 d - b0 c = 1, then shift by t (c,d)
    i64 x, y;
    i64 g = egcd(d, c, x, y);
    if (g != 1) throw std::logic_error("lift: bottom row not primitive");
    i64 a0 = x, b0 = -y;

    i64 t = 0;
    if (q1 > 1) {
        i64 tm = 0, m = 1;
        for (auto &[pp, e] : factorize(q1)) {
            i64 pk = 1;
            for (int i = 0; i < e; ++i) pk *= pp;
            i64 tp;
            if (c % pp != 0)
                tp = mul_mod(mod_pos(a2 - a0, pk), inv_mod(c, pk), pk);
            else
                tp = mul_mod(mod_pos(b2 - b0, pk), inv_mod(d, pk), pk);
            if (m == 1) { tm = tp; m = pk; }
            else { tm = crt2(tm, m, tp, pk); m *= pk; }
        }
        t = tm;
    }
    IMat2 out{a0 + t * c, b0 + t * d, c, d};
    if (out.det() != 1) throw std::logic_error("lift: determinant completion failed");
    if (!(project_matrix(out, q1, q2) == p)) throw std::logic_error("lift: projection mismatch");
    return out;
}

bool gamma2_member(const IMat2 &g, i64 q1, i64 q2) {
    return g.det() == 1 && mod_pos(g.b, q1) == 0 && mod_pos(g.c, q2) == 0;
}

CosetLabel coset_reduce(const IMat2 &g, i64 q1, i64 q2) {
    if (g.det() != 1) throw std::invalid_argument("coset_reduce: det must be 1");
    ProjPair p = project_matrix(g, q1, q2);
    return {p, lift_proj_pair(p)};
}

std::vector<CosetLabel> enumerate_cosets(i64 q1, i64 q2) {
    std::vector<CosetLabel> out;
    for (const ProjPoint &t : enumerate_proj_line(q1))
        for (const ProjPoint &b : enumerate_proj_line(q2)) {
            ProjPair p{t, b};
            if (!proj_pair_in_image(p)) continue;
            out.push_back({p, lift_proj_pair(p)});
        }
    return out;
}

i64 coset_index_bfs(i64 q1, i64 q2) {
    const IMat2 genT{1, 1, 0, 1}, genS{0, 1, -1, 0};
    auto act = [&](const ProjPair &p, const IMat2 &g) -> ProjPair {
        // right multiplication acts row-wise and commutes with unit scaling
        i64 ax = p.top.x, ay = p.top.y;
        i64 cx = p.bottom.x, cy = p.bottom.y;
        return {proj_canonicalize(q1, ax * g.a + ay * g.c, ax * g.b + ay * g.d),
                proj_canonicalize(q2, cx * g.a + cy * g.c, cx * g.b + cy * g.d)};
    };
    ProjPair start = project_matrix(IMat2{}, q1, q2);
    std::unordered_set<unsigned long long> seen{start.key()};
    std::deque<ProjPair> work{start};
    while (!work.empty()) {
        ProjPair p = work.front();
        work.pop_front();
        for (const IMat2 *g : {&genT, &genS}) {
            ProjPair n = act(p, *g);
            if (seen.insert(n.key()).second) work.push_back(n);
        }
    }
    return (i64)seen.size();
}

// ---------------------------------------------------------------------------
// Hecke sets

std::vector<IMat2> hecke_reps_h(i64 h, i64 q1) {
    if (h < 1) throw std::invalid_argument("h must be positive");
    std::vector<IMat2> out;
    std::vector<i64> ds = divisors(h);
    std::sort(ds.begin(), ds.end());
    for (i64 d : ds) {
        i64 a = h / d;
        for (i64 b = 0; b < d; ++b) out.push_back({a, b * q1, 0, d});
    }
    return out;
}

std::vector<IMat2> hecke_reps_k(i64 k, i64 r1r2) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (gcd_i64(r1r2, k) != 1) throw std::invalid_argument("gcd(r1r2,k) must be 1");
    if (k == 1) return {IMat2{}};
    std::vector<IMat2> out;
    for (i64 f = 1; f < k; ++f)
        if (gcd_i64(f, k) == 1) out.push_back({1, f * r1r2, 0, k});
    return out;
}

bool m2hk_member(const IMat2 &g, i64 h, i64 k) {
    if (g.det() != h * k) return false;
    return gcd_i64(gcd_i64(g.a, g.c), k) == 1 && gcd_i64(gcd_i64(g.b, g.d), k) == 1;
}

// ---------------------------------------------------------------------------

std::vector<IMat2> enumerate_box_sl2(double L, double bound) {
    if (!(L > 0)) throw std::invalid_argument("L must be positive");
    const double eps = 1e-9;
    std::vector<IMat2> out;
    i64 amax = (i64)std::floor(bound + eps);
    auto weight_ok = [&](i64 a, i64 b, i64 c, i64 d) {
        return std::abs((double)a) + std::abs((double)b) * L + std::abs((double)c) / L +
                   std::abs((double)d) <=
               bound + eps;
    };
    for (i64 a = -amax; a <= amax; ++a)
        for (i64 d = -amax; d <= amax; ++d) {
            double room = bound + eps - std::abs((double)a) - std::abs((double)d);
            if (room < 0) continue;
            i64 m = a * d - 1;  // = bc
            if (m == 0) {
                i64 cmax = (i64)std::floor(room * L + eps);
                for (i64 c = -cmax; c <= cmax; ++c)
                    if (weight_ok(a, 0, c, d)) out.push_back({a, 0, c, d});
                i64 bmax = (i64)std::floor(room / L + eps);
                for (i64 b = -bmax; b <= bmax; ++b) {
                    if (b == 0) continue;  // counted in the c loop
                    if (weight_ok(a, b, 0, d)) out.push_back({a, b, 0, d});
                }
            } else {
                i64 am = std::abs(m);
                for (i64 e : divisors(am))
                    for (i64 b : {e, -e}) {
                        i64 c = m / b;
                        if (weight_ok(a, b, c, d)) out.push_back({a, b, c, d});
                    }
            }
        }
    return out;
}

bool same_gamma2_orbit(const IMat2 &g1, const IMat2 &g2, i64 q1, i64 q2) {
    i64 n = g1.det();
    if (n == 0 || g2.det() != n) return false;
    // g2 * adj(g1) = n * (g2 g1^{-1})
    IMat2 adj{g1.d, -g1.b, -g1.c, g1.a};
    IMat2 m = g2 * adj;
    if (m.a % n || m.b % n || m.c % n || m.d % n) return false;
    IMat2 gamma{m.a / n, m.b / n, m.c / n, m.d / n};
    return gamma2_member(gamma, q1, q2);
}

bool orbit_swap_check(i64 h, i64 k, i64 q1, i64 q2) {
    if (gcd_i64(h, k * q1 * q2) != 1) throw std::invalid_argument("gcd(h, k*q1*q2) must be 1");
    i64 r1 = q1 / gcd_i64(k, q1), r2 = q2 / gcd_i64(k, q2);
    if (gcd_i64(r1 * r2, k) != 1)
        throw std::invalid_argument("k incompatible with moduli (non-squarefree case)");

    std::vector<IMat2> tau;
    for (auto &cl : enumerate_cosets(q1, q2)) tau.push_back(cl.lift);
    std::vector<IMat2> sh = hecke_reps_h(h, q1);
    std::vector<IMat2> sk = hecke_reps_k(k, r1 * r2);

    std::vector<IMat2> s1, s2;
    s1.reserve(tau.size() * sh.size() * sk.size());
    s2.reserve(s1.capacity());
    for (const IMat2 &t : tau)
        for (const IMat2 &a : sh)
            for (const IMat2 &b : sk) {
                s1.push_back(t * a * b);
                s2.push_back(a * t * b);
            }

    // group into orbits; bucket by the projection label when k is coprime to
    // the moduli (cheap invariant), otherwise plain pairwise grouping
    bool can_label = gcd_i64(k, q1 * q2) == 1;
    auto bucket_of = [&](const IMat2 &m) -> unsigned long long {
        if (!can_label) return 0;
        return project_matrix(m, q1, q2).key();
    };
    auto dedupe = [&](const std::vector<IMat2> &s) {
        std::unordered_map<unsigned long long, std::vector<IMat2>> reps;
        for (const IMat2 &m : s) {
            auto &v = reps[bucket_of(m)];
            bool found = false;
            for (const IMat2 &r : v)
                if (same_gamma2_orbit(r, m, q1, q2)) { found = true; break; }
            if (!found) v.push_back(m);
        }
        return reps;
    };
    auto o1 = dedupe(s1);
    auto o2 = dedupe(s2);

    size_t n1 = 0, n2 = 0;
    for (auto &[kk, v] : o1) n1 += v.size();
    for (auto &[kk, v] : o2) n2 += v.size();
    if (n1 != n2) return false;
    for (auto &[kk, v2] : o2) {
        auto it = o1.find(kk);
        if (it == o1.end()) return false;
        for (const IMat2 &r2 : v2) {
            bool found = false;
            for (const IMat2 &r1 : it->second)
                if (same_gamma2_orbit(r1, r2, q1, q2)) { found = true; break; }
            if (!found) return false;
        }
    }
    return true;
}

}  // namespace sl2
