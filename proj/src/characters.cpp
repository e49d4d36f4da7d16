#include "sl2/characters.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sl2 {

namespace {

// discrete log table mod p relative to the smallest primitive root
std::vector<i64> ind_table(i64 p) {
    std::vector<i64> ind(p, 0);
    if (p == 2) return ind;
    i64 g = primitive_root(p);
    i64 v = 1;
    for (i64 k = 0; k < p - 1; ++k) {
        ind[v] = k;
        v = mul_mod(v, g, p);
    }
    return ind;
}

thread_local std::vector<std::pair<i64, std::vector<i64>>> g_ind_cache;

const std::vector<i64> &cached_ind(i64 p) {
    for (auto &[q, t] : g_ind_cache)
        if (q == p) return t;
    g_ind_cache.push_back({p, ind_table(p)});
    return g_ind_cache.back().second;
}

}  // namespace

cplx DirichletChar::operator()(i64 n) const {
    double arg = 0;
    for (size_t i = 0; i < primes.size(); ++i) {
        i64 p = primes[i];
        i64 r = mod_pos(n, p);
        if (r == 0) return {0.0, 0.0};
        if (expo[i] == 0 || p == 2) continue;
        i64 k = cached_ind(p)[r];
        arg += 2.0 * M_PI * (double)mod_pos(expo[i] * k, p - 1) / (double)(p - 1);
    }
    return {std::cos(arg), std::sin(arg)};
}

i64 DirichletChar::root_order() const {
    i64 n = 1;
    for (i64 p : primes) n = std::lcm(n, p - 1);
    return n;
}

std::optional<i64> DirichletChar::value_exponent(i64 n) const {
    i64 N = root_order();
    i64 k = 0;
    for (size_t i = 0; i < primes.size(); ++i) {
        i64 p = primes[i];
        i64 r = mod_pos(n, p);
        if (r == 0) return std::nullopt;
        if (expo[i] == 0 || p == 2) continue;
        i64 e = mod_pos(expo[i] * cached_ind(p)[r], p - 1);
        k = mod_pos(k + e * (N / (p - 1)), N);
    }
    return k;
}

DirichletChar DirichletChar::conj() const {
    DirichletChar c = *this;
    for (size_t i = 0; i < primes.size(); ++i)
        c.expo[i] = mod_pos(-expo[i], primes[i] - 1);
    return c;
}

DirichletChar operator*(const DirichletChar &a, const DirichletChar &b) {
    if (a.q != b.q) throw std::invalid_argument("character moduli differ");
    DirichletChar c = a;
    for (size_t i = 0; i < a.primes.size(); ++i)
        c.expo[i] = mod_pos(a.expo[i] + b.expo[i], a.primes[i] - 1);
    return c;
}

DirichletChar principal_char(i64 q) {
    if (q < 1 || !is_squarefree(q))
        throw std::domain_error("unsupported-modulus: q must be squarefree");
    DirichletChar c;
    c.q = q;
    c.primes = prime_divisors(q);
    c.expo.assign(c.primes.size(), 0);
    return c;
}

std::vector<DirichletChar> char_group(i64 q) {
    DirichletChar base = principal_char(q);
    std::vector<DirichletChar> out;
    i64 total = euler_phi(q);
    out.reserve(total);
    std::vector<i64> e(base.primes.size(), 0);
    for (;;) {
        DirichletChar c = base;
        c.expo = e;
        out.push_back(c);
        // mixed-radix increment with digit i running mod (p_i - 1)
        size_t i = 0;
        for (; i < e.size(); ++i) {
            if (++e[i] < base.primes[i] - 1) break;
            e[i] = 0;
        }
        if (i == e.size()) break;
    }
    if ((i64)out.size() != total) throw std::logic_error("char_group: wrong count");
    return out;
}

DirichletChar char_component(const DirichletChar &chi, i64 m) {
    DirichletChar c;
    c.q = 1;
    for (size_t i = 0; i < chi.primes.size(); ++i)
        if (m % chi.primes[i] == 0) {
            c.q *= chi.primes[i];
            c.primes.push_back(chi.primes[i]);
            c.expo.push_back(chi.expo[i]);
        }
    return c;
}

// ---------------------------------------------------------------------------

std::vector<i64> cyclotomic_poly(i64 n) {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, exact integer division
    std::vector<i64> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (i64 d : divisors(n)) {
        if (d == n) continue;
        std::vector<i64> phi_d = cyclotomic_poly(d);
        // divide num by phi_d in place
        std::vector<i64> quot(num.size() - phi_d.size() + 1, 0);
        std::vector<i64> rem = num;
        for (i64 i = (i64)quot.size() - 1; i >= 0; --i) {
            i64 c = rem[i + phi_d.size() - 1];  // phi_d is monic
            quot[i] = c;
            if (c == 0) continue;
            for (size_t j = 0; j < phi_d.size(); ++j) rem[i + j] -= c * phi_d[j];
        }
        num = quot;
    }
    return num;
}

bool RootOfUnitySum::is_exactly_zero() const {
    return as_integer().has_value() && *as_integer() == 0;
}

std::optional<i64> RootOfUnitySum::as_integer() const {
    std::vector<i64> poly = counts;
    std::vector<i64> phi = cyclotomic_poly(order);
    i64 deg = (i64)phi.size() - 1;
    for (i64 i = (i64)poly.size() - 1; i >= deg; --i) {
        i64 c = poly[i];
        if (c == 0) continue;
        for (i64 j = 0; j <= deg; ++j) poly[i - deg + j] -= c * phi[j];
    }
    for (size_t i = 1; i < (size_t)deg && i < poly.size(); ++i)
        if (poly[i] != 0) return std::nullopt;
    return poly.empty() ? 0 : poly[0];
}

cplx RootOfUnitySum::approx() const {
    cplx s{0, 0};
    for (i64 k = 0; k < order; ++k)
        if (counts[k])
            s += (double)counts[k] *
                 cplx{std::cos(2 * M_PI * k / order), std::sin(2 * M_PI * k / order)};
    return s;
}

RootOfUnitySum char_dot(const DirichletChar &chi, const DirichletChar &psi) {
    if (chi.q != psi.q) throw std::invalid_argument("char_dot: moduli differ");
    i64 N = chi.root_order();
    RootOfUnitySum s(N);
    for (i64 n = 0; n < chi.q; ++n) {
        auto k1 = chi.value_exponent(n);
        auto k2 = psi.value_exponent(n);
        if (k1 && k2) s.add(*k1 - *k2);
    }
    return s;
}

}  // namespace sl2
