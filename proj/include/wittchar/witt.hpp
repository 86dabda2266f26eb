#pragma once

// Truncated big Witt vectors (r_1, ..., r_n) over a few coefficient rings,
// the ghost map, the E map to 1-unit power series, and the prime-to-p
// coordinates of polynomials in 1 + tF_q[t].

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "wittchar/errors.hpp"
#include "wittchar/ffield.hpp"

namespace wittchar {

// ---- coefficient rings ------------------------------------------------------------

/// Exact integers; used as the torsion-free oracle ring.
struct IntegerRing {
    using Elem = mpz_class;
    static constexpr bool kTorsionFree = true;
    static constexpr const char* kTag = "integers";

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long v) const { return mpz_class(static_cast<long>(v)); }
    bool is_zero(const Elem& x) const { return x == 0; }
    Elem add(const Elem& x, const Elem& y) const { return x + y; }
    Elem sub(const Elem& x, const Elem& y) const { return x - y; }
    Elem neg(const Elem& x) const { return -x; }
    Elem mul(const Elem& x, const Elem& y) const { return x * y; }
    Elem pow(const Elem& x, u64 e) const {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
        return r;
    }
    /// x / d when exact.
    bool divide(const Elem& x, u64 d, Elem& out) const {
        if (!mpz_divisible_ui_p(x.get_mpz_t(), d)) return false;
        mpz_divexact_ui(out.get_mpz_t(), x.get_mpz_t(), d);
        return true;
    }
    bool equal(const Elem& x, const Elem& y) const { return x == y; }
    std::string to_string(const Elem& x) const { return x.get_str(); }
};

/// Z_q modulo p^N. Division by multiples of p consumes precision.
struct PadicRing {
    using Elem = PadicElement;
    static constexpr bool kTorsionFree = true;
    static constexpr const char* kTag = "padic";

    ContextPtr ctx;

    Elem zero() const { return PadicElement(ctx); }
    Elem one() const { return PadicElement::one(ctx); }
    Elem from_int(long long v) const { return PadicElement::from_int(ctx, v); }
    bool is_zero(const Elem& x) const { return x.is_zero(); }
    Elem add(const Elem& x, const Elem& y) const { return x + y; }
    Elem sub(const Elem& x, const Elem& y) const { return x - y; }
    Elem neg(const Elem& x) const { return -x; }
    Elem mul(const Elem& x, const Elem& y) const { return x * y; }
    Elem pow(const Elem& x, u64 e) const { return x.pow(e); }
    bool divide(const Elem& x, u64 d, Elem& out) const {
        try {
            out = x.divide_int(static_cast<long long>(d));
            return true;
        } catch (const InputError&) {
            return false;
        }
    }
    bool equal(const Elem& x, const Elem& y) const { return x.agreement(y) >= std::min(x.precision(), y.precision()); }
    std::string to_string(const Elem& x) const { return x.to_string(); }
};

/// The residue field F_q. Not torsion-free: no ghost inverse, no multiplication.
struct FqRing {
    using Elem = FqElement;
    static constexpr bool kTorsionFree = false;
    static constexpr const char* kTag = "fq";

    FieldPtr field;

    Elem zero() const { return field->zero(); }
    Elem one() const { return field->one(); }
    Elem from_int(long long v) const { return field->from_int(v); }
    bool is_zero(const Elem& x) const { return field->is_zero(x); }
    Elem add(const Elem& x, const Elem& y) const { return field->add(x, y); }
    Elem sub(const Elem& x, const Elem& y) const { return field->sub(x, y); }
    Elem neg(const Elem& x) const { return field->neg(x); }
    Elem mul(const Elem& x, const Elem& y) const { return field->mul(x, y); }
    Elem pow(const Elem& x, u64 e) const { return field->pow(x, e); }
    bool equal(const Elem& x, const Elem& y) const { return x == y; }
    std::string to_string(const Elem& x) const { return field->to_string(x); }
};

// ---- Witt vectors -------------------------------------------------------------------

template <class Ring>
class BigWittVector {
public:
    using Elem = typename Ring::Elem;

    BigWittVector() = default;
    /// Components r_1..r_n stored at positions 0..n-1.
    BigWittVector(Ring ring, std::vector<Elem> r) : ring_(std::move(ring)), r_(std::move(r)) {}

    static BigWittVector zero(const Ring& ring, int n) { return BigWittVector(ring, std::vector<Elem>(n, ring.zero())); }
    /// [a] = (a, 0, 0, ...).
    static BigWittVector teichmuller(const Ring& ring, const Elem& a, int n) {
        auto x = zero(ring, n);
        if (n > 0) x.r_[0] = a;
        return x;
    }

    const Ring& ring() const { return ring_; }
    int length() const { return static_cast<int>(r_.size()); }
    /// r_i for 1 <= i <= length().
    const Elem& operator()(int i) const { return r_[i - 1]; }
    const std::vector<Elem>& components() const { return r_; }

    bool operator==(const BigWittVector& o) const {
        if (r_.size() != o.r_.size()) return false;
        for (size_t i = 0; i < r_.size(); ++i)
            if (!ring_.equal(r_[i], o.r_[i])) return false;
        return true;
    }

private:
    Ring ring_;
    std::vector<Elem> r_;
};

/// w_i = sum_{d | i} d r_d^(i/d) for i = 1..n (position i-1).
template <class Ring>
std::vector<typename Ring::Elem> ghost(const BigWittVector<Ring>& x) {
    const Ring& R = x.ring();
    const int n = x.length();
    std::vector<typename Ring::Elem> w(n, R.zero());
    for (int d = 1; d <= n; ++d) {
        if (R.is_zero(x(d))) continue;
        auto pw = x(d);
        for (int m = d; m <= n; m += d) {
            w[m - 1] = R.add(w[m - 1], R.mul(R.from_int(d), pw));
            if (m + d <= n) pw = R.mul(pw, x(d));
        }
    }
    return w;
}

/// The unique Witt vector with ghost components w over a torsion-free ring.
/// Throws InputError "not a ghost vector at i" when the division by i fails.
template <class Ring>
BigWittVector<Ring> ghost_inverse(const Ring& R, const std::vector<typename Ring::Elem>& w) {
    static_assert(Ring::kTorsionFree, "ghost_inverse needs a torsion-free ring");
    const int n = static_cast<int>(w.size());
    std::vector<typename Ring::Elem> r(n, R.zero());
    for (int i = 1; i <= n; ++i) {
        auto acc = w[i - 1];
        for (int d = 1; d < i; ++d)
            if (i % d == 0 && !R.is_zero(r[d - 1]))
                acc = R.sub(acc, R.mul(R.from_int(d), R.pow(r[d - 1], static_cast<u64>(i / d))));
        if (!R.divide(acc, static_cast<u64>(i), r[i - 1]))
            throw InputError("not a ghost vector at " + std::to_string(i));
    }
    return BigWittVector<Ring>(R, std::move(r));
}

/// Coefficients of prod_{i <= n} (1 - r_i t^i) for t^0..t^n.
template <class Ring>
std::vector<typename Ring::Elem> E_map(const BigWittVector<Ring>& x) {
    const Ring& R = x.ring();
    const int n = x.length();
    std::vector<typename Ring::Elem> h(n + 1, R.zero());
    h[0] = R.one();
    for (int i = 1; i <= n; ++i) {
        if (R.is_zero(x(i))) continue;
        for (int m = n; m >= i; --m)
            if (!R.is_zero(h[m - i])) h[m] = R.sub(h[m], R.mul(x(i), h[m - i]));
    }
    return h;
}

/// The Witt vector of length n with E(x) = f mod t^(n+1); f[0] must be 1.
template <class Ring>
BigWittVector<Ring> E_inverse(const Ring& R, std::vector<typename Ring::Elem> f, int n) {
    if (f.empty() || !R.equal(f[0], R.one())) throw InputError("E_inverse: constant term must be 1");
    f.resize(n + 1, R.zero());
    std::vector<typename Ring::Elem> r(n, R.zero());
    for (int i = 1; i <= n; ++i) {
        // f currently equals prod_{j >= i} (1 - r_j t^j) mod t^(n+1).
        r[i - 1] = R.neg(f[i]);
        if (R.is_zero(r[i - 1])) continue;
        for (int m = i; m <= n; ++m)
            if (!R.is_zero(f[m - i])) f[m] = R.add(f[m], R.mul(r[i - 1], f[m - i]));
    }
    return BigWittVector<Ring>(R, std::move(r));
}

template <class Ring>
BigWittVector<Ring> witt_add(const BigWittVector<Ring>& x, const BigWittVector<Ring>& y) {
    if (x.length() != y.length()) throw InputError("witt_add: length mismatch");
    const Ring& R = x.ring();
    if constexpr (Ring::kTorsionFree) {
        auto wx = ghost(x), wy = ghost(y);
        for (size_t i = 0; i < wx.size(); ++i) wx[i] = R.add(wx[i], wy[i]);
        return ghost_inverse(R, wx);
    } else {
        const int n = x.length();
        auto fx = E_map(x), fy = E_map(y);
        std::vector<typename Ring::Elem> prod(n + 1, R.zero());
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j) prod[i + j] = R.add(prod[i + j], R.mul(fx[i], fy[j]));
        return E_inverse(R, std::move(prod), n);
    }
}

template <class Ring>
BigWittVector<Ring> witt_mul(const BigWittVector<Ring>& x, const BigWittVector<Ring>& y) {
    if (x.length() != y.length()) throw InputError("witt_mul: length mismatch");
    if constexpr (Ring::kTorsionFree) {
        const Ring& R = x.ring();
        auto wx = ghost(x), wy = ghost(y);
        for (size_t i = 0; i < wx.size(); ++i) wx[i] = R.mul(wx[i], wy[i]);
        return ghost_inverse(R, wx);
    } else {
        throw Unsupported("Witt multiplication over F_q is not implemented");
    }
}

// ---- prime-to-p coordinates -----------------------------------------------------------

using Coordinates = std::map<int, PadicElement>;

/// Computes coordinate_i(f) = Tr_{Z_{q^d}/Z_q}(lambda^i) for irreducible f, with
/// lambda the Teichmueller lift of the chosen reciprocal root, and extends
/// additively over factorizations. Extensions are cached per degree.
class Decomposer {
public:
    /// `ctx` is the base Z_q context; its precision is the working precision.
    explicit Decomposer(ContextPtr ctx);

    const ContextPtr& context() const { return ctx_; }
    const FieldPtr& field() const { return field_; }
    const ExtensionField& extension(int d);

    /// Teichmueller lift of the reciprocal root of irreducible f, in Z_{q^d}.
    PadicElement lifted_root(const OneUnitPoly& f);
    Coordinates polynomial(const OneUnitPoly& f, const std::vector<int>& I);
    /// Same coordinates as the sum of the conjugate powers sum_j lambda^(i q^j).
    Coordinates polynomial_by_conjugates(const OneUnitPoly& f, const std::vector<int>& I);
    Coordinates general(const OneUnitPoly& g, const std::vector<int>& I);

private:
    ContextPtr ctx_;
    FieldPtr field_;
    std::map<int, ExtensionField> ext_;
};

/// Indices 1 <= i <= n prime to p.
std::vector<int> prime_to_p_indices(u64 p, int n);

/// Result of the ghost-spine cross-check for one index i.
struct SpineCoordinate {
    PadicElement value;               // in Z_q, known to value.precision()
    std::vector<FqElement> typical;  // reduced p-typical components y_0, y_1, ...
};

/// Independent route to the coordinates: lift E_inverse(g) componentwise by
/// Teichmueller to Z_q, take ghost components w_{i p^k}, invert p-typically,
/// reduce mod p and map W(F_q) -> Z_q. Uses Witt length max(I) p^(N-1).
std::map<int, SpineCoordinate> ghost_spine_coordinates(const ContextPtr& ctx, const OneUnitPoly& g,
                                                       const std::vector<int>& I);

}  // namespace wittchar
