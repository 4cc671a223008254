#pragma once

// Small exact number theory over Z/m used throughout: reduction, inverses,
// primality, quadratic residues and primitive roots.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pcube {

inline std::int64_t mod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m)
{
    std::int64_t result = 1 % m;
    std::int64_t b = mod(base, m);
    while (exp > 0) {
        if (exp & 1)
            result = result * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return result;
}

inline std::int64_t ipow(std::int64_t base, int exp)
{
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i)
        r *= base;
    return r;
}

/// Inverse of a modulo m; throws if a is not a unit.
inline std::int64_t inv_mod(std::int64_t a, std::int64_t m)
{
    std::int64_t r0 = m, r1 = mod(a, m);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1)
        throw std::domain_error("inv_mod: " + std::to_string(a) + " is not a unit mod " + std::to_string(m));
    return mod(s0, m);
}

inline bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline bool is_odd_prime(std::int64_t n) { return n > 2 && is_prime(n); }

/// Euler's criterion. Requires p odd prime and a not divisible by p.
inline bool is_square_mod_p(std::int64_t a, std::int64_t p)
{
    return pow_mod(a, (p - 1) / 2, p) == 1;
}

/// Multiplicative order of a modulo m (a must be a unit).
inline std::int64_t mult_order(std::int64_t a, std::int64_t m)
{
    std::int64_t x = mod(a, m);
    std::int64_t k = 1;
    while (x != 1 % m) {
        x = x * mod(a, m) % m;
        ++k;
    }
    return k;
}

/// Smallest positive primitive root modulo the odd prime p.
inline std::int64_t primitive_root(std::int64_t p)
{
    for (std::int64_t g = 2; g < p; ++g)
        if (mult_order(g, p) == p - 1)
            return g;
    return 1; // p == 2
}

/// Smallest positive integer generating (Z/p^2)^*; it then generates (Z/p^k)^* for every k.
inline std::int64_t primitive_root_p2(std::int64_t p)
{
    const std::int64_t m = p * p;
    for (std::int64_t g = 2; g < m; ++g)
        if (g % p != 0 && mult_order(g, m) == p * (p - 1))
            return g;
    throw std::logic_error("no primitive root mod p^2");
}

} // namespace pcube
