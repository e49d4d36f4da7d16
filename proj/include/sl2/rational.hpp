#pragma once

// Exact rational arithmetic on __int128 numerators/denominators, plus a
// complex rational pair.  The weight identities in this project (balanced
// decomposition, local density products, norm sums) are exact statements, so
// they are computed and tested in Rat, with floating conversion only at
// reporting time.  Denominators stay small (divisors of q^2 times the input
// denominators); __int128 leaves ample headroom without pulling in bignums.

#include <cstdint>
#include <cstdlib>
#include <type_traits>
#include <stdexcept>
#include <string>

#include "sl2/ntheory.hpp"

namespace sl2 {

struct Rat {
    i128 num = 0;
    i128 den = 1;

    Rat() = default;
    Rat(i64 n) : num(n), den(1) {}
    template <class N, class D,
              class = std::enable_if_t<std::is_integral_v<N> && std::is_integral_v<D>>>
    Rat(N n, D d) : num(n), den(d) {
        reduce();
    }
    Rat(i128 n, i128 d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        i128 g = gcd_i128(num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    friend Rat operator+(const Rat &a, const Rat &b) {
        return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rat operator-(const Rat &a, const Rat &b) {
        return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rat operator*(const Rat &a, const Rat &b) {
        return Rat(a.num * b.num, a.den * b.den);
    }
    friend Rat operator/(const Rat &a, const Rat &b) {
        if (b.num == 0) throw std::domain_error("Rat: division by zero");
        return Rat(a.num * b.den, a.den * b.num);
    }
    Rat operator-() const { Rat r; r.num = -num; r.den = den; return r; }
    Rat &operator+=(const Rat &b) { *this = *this + b; return *this; }
    Rat &operator-=(const Rat &b) { *this = *this - b; return *this; }
    Rat &operator*=(const Rat &b) { *this = *this * b; return *this; }

    friend bool operator==(const Rat &a, const Rat &b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rat &a, const Rat &b) { return !(a == b); }
    friend bool operator<(const Rat &a, const Rat &b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const Rat &a, const Rat &b) {
        return a.num * b.den <= b.num * a.den;
    }

    bool is_zero() const { return num == 0; }
    Rat abs() const { Rat r = *this; if (r.num < 0) r.num = -r.num; return r; }
    double to_double() const { return (double)num / (double)den; }

    std::string str() const {
        auto s = [](i128 v) {
            if (v == 0) return std::string("0");
            bool neg = v < 0;
            if (neg) v = -v;
            std::string t;
            while (v) { t += char('0' + (int)(v % 10)); v /= 10; }
            if (neg) t += '-';
            return std::string(t.rbegin(), t.rend());
        };
        if (den == 1) return s(num);
        return s(num) + "/" + s(den);
    }
};

// complex number with exact rational real/imaginary parts
struct RatC {
    Rat re, im;

    RatC() = default;
    RatC(Rat r) : re(r) {}
    RatC(Rat r, Rat i) : re(r), im(i) {}
    RatC(i64 r) : re(r) {}

    friend RatC operator+(const RatC &a, const RatC &b) { return {a.re + b.re, a.im + b.im}; }
    friend RatC operator-(const RatC &a, const RatC &b) { return {a.re - b.re, a.im - b.im}; }
    friend RatC operator*(const RatC &a, const RatC &b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    RatC &operator+=(const RatC &b) { *this = *this + b; return *this; }
    friend bool operator==(const RatC &a, const RatC &b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const RatC &a, const RatC &b) { return !(a == b); }

    RatC conj() const { return {re, -im}; }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    Rat norm2() const { return re * re + im * im; }

    // |z| as an exact rational; defined only when z is real or purely
    // imaginary, which is the domain the exact norm sums are used on
    Rat abs_exact() const {
        if (im.is_zero()) return re.abs();
        if (re.is_zero()) return im.abs();
        throw std::domain_error("RatC::abs_exact: modulus not rational");
    }
    bool has_rational_abs() const { return im.is_zero() || re.is_zero(); }
};

}  // namespace sl2
