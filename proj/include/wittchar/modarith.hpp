#pragma once

// Word-sized modular arithmetic. Moduli are prime powers p^e < 2^62, so sums of
// two residues never overflow and products go through a 128-bit intermediate.

#include <cstdint>
#include <optional>
#include <vector>

namespace wittchar {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr u64 kMaxModulus = u64{1} << 62;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    if (m <= 0xFFFFFFFFull) return a * b % m;
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 add_mod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return s >= m ? s - m : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 neg_mod(u64 a, u64 m) { return a == 0 ? 0 : m - a; }

inline u64 pow_mod(u64 base, u64 e, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return r;
}

/// Inverse of `a` modulo `m` when gcd(a, m) = 1.
std::optional<u64> inv_mod(u64 a, u64 m);

/// p-adic valuation of a nonzero integer.
inline int vp(u64 x, u64 p) {
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

/// v_p(k!) by Legendre's formula.
inline int vp_factorial(u64 k, u64 p) {
    int v = 0;
    while (k) {
        k /= p;
        v += static_cast<int>(k);
    }
    return v;
}

/// p^e, or nullopt when it does not fit below kMaxModulus.
std::optional<u64> checked_pow(u64 p, int e);

/// Largest e with p^e < 2^62.
int max_exponent(u64 p);

bool is_prime(u64 n);

/// Distinct prime divisors in increasing order.
std::vector<u64> prime_divisors(u64 n);

/// Moebius function.
int moebius(u64 n);

/// Sorted positive divisors.
std::vector<u64> divisors(u64 n);

/// Integer floor(log_p(n)) for n >= 1.
int floor_log(u64 n, u64 p);

}  // namespace wittchar
