#pragma once

// Dirichlet characters to squarefree moduli, stored as exponent vectors
// relative to the smallest primitive root of each prime factor.  Values are
// available both as complex doubles and as exact exponents of a root of
// unity; sums of values can be tested for exact vanishing by reduction
// modulo the cyclotomic polynomial.

#include <complex>
#include <optional>
#include <vector>

#include "sl2/ntheory.hpp"

namespace sl2 {

using cplx = std::complex<double>;

struct DirichletChar {
    i64 q = 1;                 // squarefree modulus
    std::vector<i64> primes;   // prime factors of q, ascending
    std::vector<i64> expo;     // exponent e_p in Z/(p-1)Z per prime

    bool is_principal() const {
        for (i64 e : expo) if (e) return false;
        return true;
    }
    i64 conductor() const {
        i64 c = 1;
        for (size_t i = 0; i < primes.size(); ++i)
            if (expo[i]) c *= primes[i];
        return c;
    }
    i64 conductor_at(i64 p) const {
        for (size_t i = 0; i < primes.size(); ++i)
            if (primes[i] == p) return expo[i] ? p : 1;
        return 1;
    }
    int parity() const {  // kappa with chi(-1) = (-1)^kappa
        i64 s = 0;
        for (size_t i = 0; i < primes.size(); ++i)
            if (primes[i] > 2) s += expo[i];
        return (int)(s & 1);
    }

    cplx operator()(i64 n) const;

    // exact value as exponent k of zeta_N, N = root_order(); nullopt when
    // gcd(n, q) > 1 (value 0)
    i64 root_order() const;
    std::optional<i64> value_exponent(i64 n) const;

    DirichletChar conj() const;
    // pointwise product; moduli must agree
    friend DirichletChar operator*(const DirichletChar &a, const DirichletChar &b);
};

// the full character group mod squarefree q (phi(q) elements, principal first)
std::vector<DirichletChar> char_group(i64 q);
DirichletChar principal_char(i64 q);

// restriction of chi to the part of its modulus dividing m (CRT component)
DirichletChar char_component(const DirichletChar &chi, i64 m);

// ---------------------------------------------------------------------------
// exact sums of roots of unity

// cyclotomic polynomial Phi_n as integer coefficients (ascending degree)
std::vector<i64> cyclotomic_poly(i64 n);

// accumulates integer multiples of zeta_N^k and decides exact vanishing by
// reduction modulo Phi_N
struct RootOfUnitySum {
    i64 order = 1;
    std::vector<i64> counts;  // counts[k] multiplies zeta^k

    explicit RootOfUnitySum(i64 n) : order(n), counts(n, 0) {}
    void add(i64 k, i64 mult = 1) { counts[mod_pos(k, order)] += mult; }
    bool is_exactly_zero() const;
    // exact integer value if the sum reduces to a rational integer
    std::optional<i64> as_integer() const;
    cplx approx() const;
};

// exact inner product sum_{n mod q} chi(n) * conj(psi(n)); returns the value
// as a RootOfUnitySum over the common root order
RootOfUnitySum char_dot(const DirichletChar &chi, const DirichletChar &psi);

}  // namespace sl2
