#pragma once

// Elementary number theory helpers shared by the orbit and character layers.
// Everything works on int64 inputs; intermediates widen to __int128 where
// products could overflow.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sl2 {

using i64 = long long;
using i128 = __int128_t;

inline i64 gcd_i64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { i64 t = a % b; a = b; b = t; }
    return a;
}

inline i128 gcd_i128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { i128 t = a % b; a = b; b = t; }
    return a;
}

// extended gcd: returns g = gcd(a,b) and x,y with a*x + b*y = g
inline i64 egcd(i64 a, i64 b, i64 &x, i64 &y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    i64 x1, y1;
    i64 g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline i64 mod_pos(i64 a, i64 m) {
    a %= m;
    return a < 0 ? a + m : a;
}

inline i64 mul_mod(i64 a, i64 b, i64 m) {
    return (i64)(((i128)mod_pos(a, m) * mod_pos(b, m)) % m);
}

inline i64 inv_mod(i64 a, i64 m) {
    i64 x, y;
    i64 g = egcd(mod_pos(a, m), m, x, y);
    if (g != 1) throw std::invalid_argument("inv_mod: not invertible");
    return mod_pos(x, m);
}

inline i64 pow_mod(i64 a, i64 e, i64 m) {
    i64 r = 1 % m;
    a = mod_pos(a, m);
    while (e > 0) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

// trial division; fine for the desk-scale moduli used here
inline std::vector<std::pair<i64, int>> factorize(i64 n) {
    std::vector<std::pair<i64, int>> f;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.push_back({p, e});
        }
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

inline bool is_squarefree(i64 n) {
    if (n <= 0) return false;
    for (auto &[p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

inline std::vector<i64> prime_divisors(i64 n) {
    std::vector<i64> ps;
    for (auto &[p, e] : factorize(n)) ps.push_back(p);
    return ps;
}

inline std::vector<i64> divisors(i64 n) {
    std::vector<i64> ds{1};
    for (auto &[p, e] : factorize(n)) {
        size_t m = ds.size();
        i64 pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < m; ++j) ds.push_back(ds[j] * pk);
        }
    }
    return ds;
}

inline i64 euler_phi(i64 n) {
    i64 r = n;
    for (i64 p : prime_divisors(n)) r = r / p * (p - 1);
    return r;
}

inline i64 sigma1(i64 n) {
    i64 r = 1;
    for (auto &[p, e] : factorize(n)) {
        i64 s = 1, pk = 1;
        for (int i = 1; i <= e; ++i) { pk *= p; s += pk; }
        r *= s;
    }
    return r;
}

// CRT for two congruences x = a (mod m), x = b (mod n) with gcd(m,n)=1
inline i64 crt2(i64 a, i64 m, i64 b, i64 n) {
    i64 x, y;
    i64 g = egcd(m, n, x, y);
    if (g != 1) throw std::invalid_argument("crt2: moduli not coprime");
    i64 mn = m * n;
    i64 r = mod_pos(a, mn);
    i64 diff = mod_pos(b - r, n);
    r = mod_pos(r + (i128)m % mn * mul_mod(diff, mod_pos(x, n), n) % mn, mn);
    return r;
}

// smallest primitive root mod an odd prime p
inline i64 primitive_root(i64 p) {
    if (p == 2) return 1;
    std::vector<i64> qs = prime_divisors(p - 1);
    for (i64 g = 2; g < p; ++g) {
        bool ok = true;
        for (i64 q : qs)
            if (pow_mod(g, (p - 1) / q, p) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: none found");
}

}  // namespace sl2
