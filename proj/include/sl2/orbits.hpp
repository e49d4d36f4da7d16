#pragma once

// Integer-matrix machinery: projective lines over Z/qZ, coset labels and
// canonical lifts for Gamma_2(q1,q2) \ SL2(Z), Hecke representative sets,
// membership tests for twisted determinant sets, and the bounded-box SL2(Z)
// enumeration used by the K term.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sl2/ntheory.hpp"

namespace sl2 {

struct IMat2 {
    i64 a = 1, b = 0, c = 0, d = 1;

    i64 det() const { return (i64)((i128)a * d - (i128)b * c); }
    friend IMat2 operator*(const IMat2 &m, const IMat2 &n) {
        return {(i64)((i128)m.a * n.a + (i128)m.b * n.c),
                (i64)((i128)m.a * n.b + (i128)m.b * n.d),
                (i64)((i128)m.c * n.a + (i128)m.d * n.c),
                (i64)((i128)m.c * n.b + (i128)m.d * n.d)};
    }
    friend bool operator==(const IMat2 &m, const IMat2 &n) {
        return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
    }
    std::string str() const;
};

// point of P^1(Z/qZ) in canonical form: the CRT combination of the per-prime-
// power normal forms (x,1), or (1,y) with p | y
struct ProjPoint {
    i64 q = 1;
    i64 x = 0, y = 0;  // canonical residues mod q

    friend bool operator==(const ProjPoint &a, const ProjPoint &b) {
        return a.q == b.q && a.x == b.x && a.y == b.y;
    }
    friend bool operator<(const ProjPoint &a, const ProjPoint &b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

struct ProjPair {
    ProjPoint top;     // row (a,b) mod q1
    ProjPoint bottom;  // row (c,d) mod q2

    friend bool operator==(const ProjPair &a, const ProjPair &b) {
        return a.top == b.top && a.bottom == b.bottom;
    }
    friend bool operator<(const ProjPair &a, const ProjPair &b) {
        if (!(a.top == b.top)) return a.top < b.top;
        return a.bottom < b.bottom;
    }
    // packed key for hashing
    unsigned long long key() const {
        unsigned long long k = (unsigned long long)top.x;
        k = k * 1000003ULL + top.y;
        k = k * 1000003ULL + bottom.x;
        k = k * 1000003ULL + bottom.y;
        return k;
    }
};

// canonical representative of (x:y) in P^1(Z/qZ); requires gcd(x,y,q)=1
ProjPoint proj_canonicalize(i64 q, i64 x, i64 y);

// all points of P^1(Z/qZ) for squarefree q; throws unsupported-modulus otherwise
std::vector<ProjPoint> enumerate_proj_line(i64 q);

// row-wise projection SL2(Z) -> P^1(q1) x P^1(q2); defined for any integer
// matrix whose rows satisfy gcd(row, q_i) = 1 (throws otherwise)
ProjPair project_matrix(const IMat2 &g, i64 q1, i64 q2);

// true iff the pair lies in the image of the projection:
// gcd(cross-determinant, gcd(q1,q2)) = 1
bool proj_pair_in_image(const ProjPair &p);

// deterministic canonical lift: an SL2(Z) matrix projecting to the pair.
// Throws not-in-image when the pair fails the gcd condition.
IMat2 lift_proj_pair(const ProjPair &p);

// q1 | b, q2 | c, det = 1
bool gamma2_member(const IMat2 &g, i64 q1, i64 q2);

struct CosetLabel {
    ProjPair pair;
    IMat2 lift;
};

CosetLabel coset_reduce(const IMat2 &g, i64 q1, i64 q2);

// all coset labels of Gamma_2(q1,q2) \ SL2(Z), enumerated from the projective
// pairs in the image; lifts are canonical
std::vector<CosetLabel> enumerate_cosets(i64 q1, i64 q2);

// index count via breadth-first search over right multiplication by the
// generators (1,1;0,1) and (0,1;-1,0), starting at the identity label
i64 coset_index_bfs(i64 q1, i64 q2);

// upper-triangular Hecke set for determinant h and level q1:
// (a, b*q1; 0, d), ad = h, 0 <= b < d; sigma_1(h) matrices
std::vector<IMat2> hecke_reps_h(i64 h, i64 q1);

// representatives (1, f*r1r2; 0, k), 1 <= f < k, gcd(f,k) = 1 (identity for k=1)
std::vector<IMat2> hecke_reps_k(i64 k, i64 r1r2);

// det g = h*k and gcd(a,c,k) = gcd(b,d,k) = 1
bool m2hk_member(const IMat2 &g, i64 h, i64 k);

// integer matrices with det 1 and |a| + |b| L + |c| / L + |d| <= bound
std::vector<IMat2> enumerate_box_sl2(double L, double bound = 6.0);

// true iff g2 * g1^{-1} lies in Gamma_2(q1,q2); g1, g2 must have equal nonzero
// determinants
bool same_gamma2_orbit(const IMat2 &g1, const IMat2 &g2, i64 q1, i64 q2);

// checks the identity of orbit sets
//   Gamma T T_h^{(q1)} T_{1,k} = Gamma T_h^{(q1)} T T_{1,k}
// by exhaustive reduction; requires gcd(h, k*q1*q2) = 1
bool orbit_swap_check(i64 h, i64 k, i64 q1, i64 q2);

}  // namespace sl2
