#pragma once

// Weight objects living on residues and on cosets: periodic weights with
// exact rational entries, the local density omega(r,h;q), the pair density
// U_h and its norm N_h, the balanced decomposition t = sum_{q0|q} t^b(.;q0),
// alpha weights with four character twists, the correlation sums
// w(sigma,sigma1,sigma2) by direct coset enumeration and by the projective
// closed form, and the character-sum reference bound.

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sl2/characters.hpp"
#include "sl2/orbits.hpp"
#include "sl2/rational.hpp"

namespace sl2 {

struct PeriodicWeight {
    i64 q = 1;
    std::vector<RatC> values;  // length q, indexed by residue

    PeriodicWeight() : values(1, RatC(Rat(1))) {}
    explicit PeriodicWeight(i64 modulus) : q(modulus), values(modulus) {}

    const RatC &at(i64 n) const { return values[mod_pos(n, q)]; }
    Rat norm2() const {
        Rat s;
        for (const RatC &v : values) s += v.norm2();
        return s;
    }
    std::string to_json() const;
    static PeriodicWeight from_json(const std::string &text);
};

// local density: prod_{p|q} (p-1)/(p(p+1)) or (2p-1)/(p(p+1)) according to
// whether r(r+h) = 0 mod p; requires squarefree q and gcd(h,q)=1
Rat omega_weight(i64 r, i64 h, i64 q);

// prod_{p|q} ( 1_{r1=0} + 1_{r2=0} + 1_{r2=-h} + 1_{r1=r2} + 1/p ) mod p
Rat uh_weight(i64 r1, i64 r2, i64 h, i64 q);

// N_h(t) = sum_{r1,r2} |t(r1) t(r2)| U_h(r1,r2;q); exact, so every entry of t
// must have rational modulus (real or purely imaginary)
Rat nh_norm(const PeriodicWeight &t, i64 h);

// u(r;q0) = prod_{p|q0} (1_{p|r} - 1/p)
Rat balanced_u(i64 r, i64 q0);

// balanced decomposition t(n) = sum_{q0|q} t^b(n;q0); exact
std::map<i64, PeriodicWeight> balanced_decompose(const PeriodicWeight &t);

// ---------------------------------------------------------------------------
// alpha weights on integer matrices

// alpha(g) = alpha0(coset label of g) * chi1(a) psi1(b) chi2(c) psi2(d).
// The optional table alpha0 is stored over canonical coset labels of
// Gamma_2(q1,q2) \ SL2(Z); on matrices with determinant m coprime to q1 q2 it
// is read through the label together with the determinant twist (the stored
// quantity v = b*c/det mod q is scaling-invariant, see bc_indicator).
struct AlphaWeight {
    i64 q1 = 1, q2 = 1;
    DirichletChar chi1, psi1;  // moduli dividing q1
    DirichletChar chi2, psi2;  // moduli dividing q2
    std::optional<std::map<ProjPair, cplx>> alpha0;

    static AlphaWeight principal(i64 q1, i64 q2);
    // the arithmetic-progression indicator alpha0 = 1_{bc = r mod q} on
    // Gamma_2(q,q) \ SL2(Z)
    static AlphaWeight bc_indicator(i64 q, i64 r);

    cplx eval(const IMat2 &g) const;
    // chi = chi1 psi1 conj(chi2) conj(psi2), the twist character mod q1*q2
    DirichletChar twist_char() const;
    // sum over cosets of |alpha0|^2 (1 per coset when no table)
    double alpha0_norm2() const;
};

// w(sigma, sigma1, sigma2) = sum_{tau in T} alpha(tau sigma sigma1)
// conj(alpha(tau sigma2)), T = canonical lifts of Gamma_2(q1,q2) \ SL2(Z).
// Throws resource-limit when the index exceeds max_index.
cplx w_oracle(const IMat2 &sigma, const IMat2 &sigma1, const IMat2 &sigma2,
              const AlphaWeight &alpha, i64 max_index = 100000);
inline cplx w_oracle(const IMat2 &sigma, const AlphaWeight &alpha) {
    return w_oracle(sigma, IMat2{}, IMat2{}, alpha);
}

// closed form of w(sigma, I, I) as a double sum over projective pairs
cplx w_closed_form(const IMat2 &sigma, const AlphaWeight &alpha);

// reference scale for the character-sum bound: with epsilon = 0 and implied
// constant 1,
//   bound * Q1 * Q2 * prod_{p | Qj, p notdiv Q0} 1/cond(x_j; p)
//           * prod_{p | Q0} 1/max_j cond(x_j; p)
// where x_j = psi_j in row mode (upper unipotent, entry b) and x_j = chi_j in
// column mode (lower unipotent, entry c)
enum class CharSumMode { UpperRow, LowerRow };
double char_sum_bound_rhs(double bound, const DirichletChar &chi1,
                          const DirichletChar &psi1, const DirichletChar &chi2,
                          const DirichletChar &psi2, i64 Q1, i64 Q2,
                          CharSumMode mode);

// verifies l_g alpha = chi(a) alpha on random g with q1 | b, q2 | c,
// det g = 1; returns the max absolute deviation over the samples
double alpha_invariance_check(const AlphaWeight &alpha, int samples,
                              unsigned long long seed = 1);

// ---------------------------------------------------------------------------
// the seven-fold splitting used by the balanced-weight correlation bound

// V(g; qvec) = prod of the divisibility indicators attached to
// (q1..q7) = (q_a, q_b, q_c, q_d, q_{gcd(a,d)}, q_{gcd(b,c)}, q_{coprime})
struct SevenSplit {
    i64 parts[7] = {1, 1, 1, 1, 1, 1, 1};
    i64 q0() const {
        i64 m = 1;
        for (i64 p : parts) m *= p;
        return m;
    }
    i64 Q1() const { return parts[0] * parts[1] * parts[4] * parts[5] * parts[6]; }
    i64 Q2() const { return parts[2] * parts[3] * parts[4] * parts[5] * parts[6]; }
};

bool seven_split_indicator(const IMat2 &g, const SevenSplit &s);

// all factorizations of squarefree q0 into seven ordered parts
std::vector<SevenSplit> enumerate_seven_splits(i64 q0);

// alpha(tau; qvec) = t^b(-h * a * d mod q0; q0) * V(tau; qvec) evaluated on a
// det-1 coset lift, with t^b the balanced component of t at q0
RatC balanced_alpha(const IMat2 &tau, const PeriodicWeight &tflat, i64 h,
                    const SevenSplit &s);

// left side of the correlation bound:
//   sum_tau alpha(tau * (e,b;0,e); qvec) conj(alpha(tau; qvec)),
// tau over canonical lifts of Gamma_2(Q1,Q2) \ SL2(Z), e = +-1
RatC balanced_correlation_sum(const PeriodicWeight &tflat, i64 h,
                              const SevenSplit &s, i64 b, int sign);

}  // namespace sl2
