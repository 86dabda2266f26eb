#include "wittchar/modarith.hpp"

#include <algorithm>

namespace wittchar {

std::optional<u64> inv_mod(u64 a, u64 m) {
    // Extended Euclid on signed 128-bit to stay clear of overflow.
    __int128 old_r = static_cast<__int128>(a % m), r = m;
    __int128 old_s = 1, s = 0;
    while (r != 0) {
        __int128 q = old_r / r;
        __int128 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) return std::nullopt;
    __int128 res = old_s % static_cast<__int128>(m);
    if (res < 0) res += m;
    return static_cast<u64>(res);
}

std::optional<u64> checked_pow(u64 p, int e) {
    u64 r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (kMaxModulus - 1) / p) return std::nullopt;
        r *= p;
    }
    return r;
}

int max_exponent(u64 p) {
    int e = 0;
    u64 r = 1;
    while (r <= (kMaxModulus - 1) / p) {
        r *= p;
        ++e;
    }
    return e;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

int moebius(u64 n) {
    int sign = 1;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int floor_log(u64 n, u64 p) {
    int e = 0;
    while (n >= p) {
        n /= p;
        ++e;
    }
    return e;
}

}  // namespace wittchar
