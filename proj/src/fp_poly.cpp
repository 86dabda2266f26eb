#include "wittchar/fp_poly.hpp"

#include "wittchar/errors.hpp"

namespace wittchar::fp {

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

Poly sub(const Poly& f, const Poly& g, u64 p) {
    Poly r(std::max(f.size(), g.size()), 0);
    for (size_t i = 0; i < f.size(); ++i) r[i] = f[i];
    for (size_t i = 0; i < g.size(); ++i) r[i] = sub_mod(r[i], g[i], p);
    trim(r);
    return r;
}

Poly mul(const Poly& f, const Poly& g, u64 p) {
    if (f.empty() || g.empty()) return {};
    Poly r(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j)
            r[i + j] = add_mod(r[i + j], mul_mod(f[i], g[j], p), p);
    }
    trim(r);
    return r;
}

Poly mod(Poly f, const Poly& g, u64 p) {
    int dg = degree(g);
    if (dg < 0) throw InputError("fp::mod: division by zero polynomial");
    u64 lead_inv = *inv_mod(g[dg], p);
    trim(f);
    while (degree(f) >= dg) {
        int df = degree(f);
        u64 c = mul_mod(f[df], lead_inv, p);
        int shift = df - dg;
        for (int i = 0; i <= dg; ++i)
            f[shift + i] = sub_mod(f[shift + i], mul_mod(c, g[i], p), p);
        trim(f);
    }
    return f;
}

Poly gcd(Poly f, Poly g, u64 p) {
    trim(f);
    trim(g);
    while (!g.empty()) {
        Poly r = mod(f, g, p);
        f = std::move(g);
        g = std::move(r);
    }
    if (!f.empty()) {
        u64 inv = *inv_mod(f.back(), p);
        for (auto& c : f) c = mul_mod(c, inv, p);
    }
    return f;
}

Poly powmod(Poly base, u64 e, const Poly& m, u64 p) {
    Poly r{1};
    base = mod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = mod(mul(r, base, p), m, p);
        base = mod(mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

bool is_irreducible(const Poly& f, u64 p) {
    int n = degree(f);
    if (n < 1) return false;
    if (n == 1) return true;
    if (f[0] % p == 0) return false;
    const Poly x{0, 1};
    // x^(p^k) mod f for k = 1..n
    std::vector<Poly> frob(n + 1);
    frob[0] = x;
    for (int k = 1; k <= n; ++k) frob[k] = powmod(frob[k - 1], p, f, p);
    if (mod(sub(frob[n], x, p), f, p) != Poly{}) return false;
    for (u64 r : prime_divisors(static_cast<u64>(n))) {
        Poly g = gcd(f, sub(frob[n / r], x, p), p);
        if (degree(g) != 0) return false;
    }
    return true;
}

Poly smallest_irreducible(u64 p, int n) {
    if (n < 1) throw InputError("smallest_irreducible: degree must be >= 1");
    Poly f(n + 1, 0);
    f[n] = 1;
    // Odometer over (c_0, ..., c_{n-1}) with c_0 most significant.
    while (true) {
        if (is_irreducible(f, p)) return f;
        int i = n - 1;
        while (i >= 0) {
            if (++f[i] < p) break;
            f[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    throw InputError("smallest_irreducible: no irreducible polynomial found");
}

}  // namespace wittchar::fp
