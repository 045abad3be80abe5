#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrtkit {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// All residue arithmetic keeps operands below 2^31, so a 64-bit product
// never overflows before reduction.
inline constexpr u64 kMaxModulus = u64(1) << 31;

inline u64 mul_mod(u64 a, u64 b, u64 m) { return a * b % m; }

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (u64 d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

/// Distinct prime divisors of n, ascending. n = 1 yields an empty set.
inline std::vector<u64> prime_factorize(u64 n) {
    if (n < 1) throw std::invalid_argument("prime_factorize: n must be positive");
    std::vector<u64> factors;
    for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            factors.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) factors.push_back(n);
    return factors;
}

/// Multiplicative inverse of x modulo m via the extended Euclidean
/// algorithm. Result lies in [1, m-1]; throws if no inverse exists.
inline u64 mod_inverse(u64 x, u64 m) {
    if (m < 2) throw std::invalid_argument("mod_inverse: modulus must be > 1");
    x %= m;
    if (x == 0) throw std::domain_error("mod_inverse: zero has no inverse");
    i64 r0 = i64(m), r1 = i64(x);
    i64 s0 = 0, s1 = 1;
    while (r1 != 0) {
        i64 q = r0 / r1;
        i64 r2 = r0 - q * r1;
        r0 = r1; r1 = r2;
        i64 s2 = s0 - q * s1;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw std::domain_error("mod_inverse: arguments are not coprime");
    if (s0 < 0) s0 += i64(m);
    return u64(s0);
}

/// Smallest prime candidate a that generates the full multiplicative
/// group mod m: a^((m-1)/f) != 1 for every prime factor f of m-1.
inline u64 find_primitive_root(u64 m) {
    if (!is_prime(m)) throw std::invalid_argument("find_primitive_root: modulus must be prime");
    if (m == 2) return 1;
    const std::vector<u64> factors = prime_factorize(m - 1);
    for (u64 a = 2; a < m; ++a) {
        if (!is_prime(a)) continue;
        bool primitive = true;
        for (u64 f : factors) {
            if (pow_mod(a, (m - 1) / f, m) == 1) { primitive = false; break; }
        }
        if (primitive) return a;
    }
    throw std::runtime_error("find_primitive_root: no prime primitive root found");
}

/// Prime modulus M together with a primitive root and a root of unity of
/// order `length`, the transform size all other modules work over.
struct ModRing {
    u32 modulus = 0;         // M, prime
    u32 length = 0;          // N, transform length; divides M-1
    u32 primitive_root = 0;  // a
    u32 root = 0;            // a^((M-1)/N), order exactly N

    u32 reduce(u64 x) const { return u32(x % modulus); }
    u32 reduce_signed(i64 x) const {
        i64 r = x % i64(modulus);
        if (r < 0) r += modulus;
        return u32(r);
    }
    u32 add(u32 a, u32 b) const {
        u32 s = a + b;
        if (s >= modulus) s -= modulus;
        return s;
    }
    u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + modulus - b; }
    u32 neg(u32 a) const { return a == 0 ? 0 : modulus - a; }
    u32 mul(u32 a, u32 b) const { return u32(u64(a) * b % modulus); }
    u32 pow(u32 base, u64 exp) const { return u32(pow_mod(base, exp, modulus)); }
    u32 inv(u32 x) const { return u32(mod_inverse(x, modulus)); }

    /// Root of unity of order L; requires L | M-1.
    u32 root_of_order(u32 order) const {
        if (order == 0 || (modulus - 1) % order != 0)
            throw std::invalid_argument("ModRing: order " + std::to_string(order) +
                                        " does not divide M-1");
        return pow(primitive_root, (modulus - 1) / order);
    }
    bool supports_order(u32 order) const {
        return order != 0 && (modulus - 1) % order == 0;
    }
};

/// Ring over a given prime modulus; length must divide M-1.
inline ModRing make_ring(u32 modulus, u32 length) {
    if (!is_prime(modulus)) throw std::invalid_argument("make_ring: modulus must be prime");
    if (modulus >= kMaxModulus) throw std::invalid_argument("make_ring: modulus too large");
    if (length == 0 || (u64(modulus) - 1) % length != 0)
        throw std::invalid_argument("make_ring: transform length must divide M-1");
    ModRing ring;
    ring.modulus = modulus;
    ring.length = length;
    ring.primitive_root = u32(find_primitive_root(modulus));
    ring.root = ring.pow(ring.primitive_root, (modulus - 1) / length);
    return ring;
}

/// Smallest prime M = k*(N*pow2_factor) + 1 with M > min_value, as a ring
/// with an order-N root. pow2_factor > 1 additionally grants the dyadic
/// roots an internal fast convolution needs.
inline ModRing select_modulus(u32 length, u32 min_value, u32 pow2_factor = 1) {
    if (!is_prime(length)) throw std::invalid_argument("select_modulus: N must be prime");
    if (pow2_factor == 0 || (pow2_factor & (pow2_factor - 1)) != 0)
        throw std::invalid_argument("select_modulus: pow2_factor must be a power of two");
    const u64 step = u64(length) * pow2_factor;
    for (u64 m = step + 1; m < kMaxModulus; m += step) {
        if (m > min_value && is_prime(m)) return make_ring(u32(m), length);
    }
    throw std::runtime_error("select_modulus: search exhausted below 2^31");
}

}  // namespace nrtkit
