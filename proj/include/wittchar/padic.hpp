#pragma once

// Fixed-precision arithmetic in the unramified extension Z_q of Z_p.
//
// A Context describes the ring Z_p[x]/(M(x)) modulo p^capacity, where M is a
// monic lift of an irreducible polynomial over F_p. Every element carries an
// absolute precision (number of known p-adic digits, at most the capacity);
// ring operations propagate it, and exact divisions by p consume it. The
// context's `precision()` is the caller's target N; the extra stored digits
// (capacity - N) absorb the losses of Log, Exp and factorial denominators.

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "wittchar/modarith.hpp"

namespace wittchar {

class Context;
using ContextPtr = std::shared_ptr<const Context>;

inline constexpr int kMaxDegree = 64;

class Context : public std::enable_shared_from_this<Context> {
public:
    /// `modulus` holds degree+1 ascending integer coefficients of a monic
    /// polynomial whose reduction mod p is irreducible; empty selects the
    /// lexicographically smallest irreducible over F_p. `capacity` 0 picks
    /// precision plus the default guard.
    static ContextPtr make(u64 p, int degree, int precision, std::vector<u64> modulus = {},
                           int capacity = 0);

    /// Digits reserved above the target precision N by default.
    static int default_guard(u64 p, int precision);

    u64 prime() const { return p_; }
    int degree() const { return n_; }
    int precision() const { return precision_; }
    int capacity() const { return cap_; }
    u64 modulus_value() const { return pcap_; }
    /// q = p^degree, saturated at UINT64_MAX.
    u64 residue_size() const { return q_; }
    /// p^e for 0 <= e <= capacity().
    u64 power(int e) const { return pw_[e]; }
    const std::vector<u64>& modulus() const { return modulus_; }

    /// Z_p with the same precision and capacity.
    ContextPtr prime_context() const;
    /// Same modulus, different precision (and capacity).
    ContextPtr with_precision(int precision, int capacity = 0) const;

    bool same_ring(const Context& other) const;

    // Raw kernels on coordinate arrays of length degree(), entries in [0, p^cap).
    void mul(const u64* x, const u64* y, u64* out) const;
    void frobenius(const u64* x, int j, u64* out) const;
    u64 trace(const u64* x) const;
    /// Row-major matrix of sigma^j, 0 <= j < degree().
    const std::vector<u64>& frobenius_matrix(int j) const;
    /// Tr(x^k) for k < degree().
    const std::vector<u64>& trace_vector() const { return trace_vec_; }
    /// Inverse of a unit given by raw coordinates; false if not a unit.
    bool inverse(const u64* x, u64* out) const;

    std::string describe() const;

private:
    Context() = default;
    void init_frobenius();

    u64 p_ = 0;
    int n_ = 0;
    int precision_ = 0;
    int cap_ = 0;
    u64 pcap_ = 0;
    u64 q_ = 0;
    bool lazy_ = false;
    std::vector<u64> pw_;
    std::vector<u64> modulus_;
    std::vector<std::vector<u64>> frob_;
    std::vector<u64> trace_vec_;
    ContextPtr prime_;
};

/// An element of Z_q known modulo p^precision(). Coordinates are on the power
/// basis 1, x, ..., x^(n-1) and reduced into [0, p^precision()).
class PadicElement {
public:
    PadicElement() = default;
    /// Exact zero.
    explicit PadicElement(ContextPtr ctx);

    static PadicElement from_int(ContextPtr ctx, long long value);
    /// Coordinates are reduced; `prec` < 0 means the context's target precision.
    static PadicElement from_coords(ContextPtr ctx, std::vector<u64> coords, int prec = -1);
    static PadicElement from_signed(ContextPtr ctx, const std::vector<long long>& coords,
                                    int prec = -1);
    static PadicElement one(ContextPtr ctx) { return from_int(std::move(ctx), 1); }
    /// The class of x, a root of the modulus.
    static PadicElement generator(ContextPtr ctx);

    const ContextPtr& context() const { return ctx_; }
    const std::vector<u64>& coords() const { return c_; }
    int precision() const { return prec_; }
    bool valid() const { return ctx_ != nullptr; }

    /// min(v_p, precision); equals precision() when the element is zero to
    /// the known digits.
    int valuation() const;
    bool is_zero() const;
    /// Valuation is determined (the element is nonzero at known precision).
    bool resolved() const { return !is_zero(); }
    bool is_one_unit() const;
    bool in_prime_field() const;
    /// Coordinate 0, for elements of Z_p.
    u64 residue() const { return c_.empty() ? 0 : c_[0]; }

    PadicElement reduce_precision(int prec) const;
    /// Reinterprets the coordinates in another context with the same modulus.
    PadicElement cast(const ContextPtr& ctx) const;

    PadicElement operator-() const;
    PadicElement& operator+=(const PadicElement& o);
    PadicElement& operator-=(const PadicElement& o);
    PadicElement& operator*=(const PadicElement& o);
    friend PadicElement operator+(PadicElement a, const PadicElement& b) { return a += b; }
    friend PadicElement operator-(PadicElement a, const PadicElement& b) { return a -= b; }
    friend PadicElement operator*(PadicElement a, const PadicElement& b) { return a *= b; }

    PadicElement mul_int(long long k) const;
    /// Exact division by p^k; throws if the known digits are not divisible.
    PadicElement divide_by_p(int k) const;
    /// Exact division by a nonzero integer.
    PadicElement divide_int(long long k) const;
    /// Division by an element of the form p^v * unit.
    PadicElement divide(const PadicElement& d) const;
    PadicElement pow(u64 e) const;
    PadicElement inverse() const;

    /// Equality of the first `digits` p-adic digits.
    bool equals_mod(const PadicElement& o, int digits) const;
    /// Valuation of the difference (capped at the joint precision).
    int agreement(const PadicElement& o) const;

    bool operator==(const PadicElement& o) const;

    std::string to_string() const;

private:
    void check_same(const PadicElement& o) const;
    void normalize();

    ContextPtr ctx_;
    std::vector<u64> c_;
    int prec_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const PadicElement& x) { return os << x.to_string(); }

/// Per-coordinate comparison, lexicographic from coordinate 0.
bool lex_less(const std::vector<u64>& a, const std::vector<u64>& b);

// ---- ring maps ----------------------------------------------------------------

/// sigma^j; j may be negative.
PadicElement frobenius(const PadicElement& x, int j = 1);
/// Absolute trace to Z_p, returned in the prime context.
PadicElement trace(const PadicElement& x);
/// Trace computed as the trace of the multiplication-by-x matrix.
PadicElement trace_by_matrix(const PadicElement& x);

/// Teichmueller lift of a residue-field element given by coordinates mod p.
/// The lift of 0 is 0.
PadicElement teichmuller(const ContextPtr& ctx, const std::vector<u64>& residue);

// ---- logarithm and exponential ------------------------------------------------

/// p-adic logarithm of a 1-unit.
PadicElement padic_log(const PadicElement& u);
/// p-adic exponential of an element with positive valuation.
PadicElement padic_exp(const PadicElement& z);
/// Log(1+p) in the given context.
PadicElement log_one_plus_p(const ContextPtr& ctx);

/// (1+p)^r as Exp(r * Log(1+p)); r may lie in Z_q.
PadicElement one_unit_exp(const PadicElement& r);
/// (1+p)^e for a non-negative integer exponent.
PadicElement one_unit_pow(const ContextPtr& ctx, u64 e);
/// (1+p)^r for r in Z_p by powering the integer representative. Knowing r
/// modulo p^k fixes the result modulo p^(k+1).
PadicElement one_unit_power(const PadicElement& r);
/// The unique r in Z_p with (1+p)^r = u.
PadicElement one_unit_log_solve(const PadicElement& u);

// ---- trace duality ---------------------------------------------------------------

/// Gram matrix Tr(e_i e_j) of the power basis, row-major, entries mod p^cap.
std::vector<u64> gram_matrix(const ContextPtr& ctx);
/// v_p of det(Tr(e_i e_j)); zero for a valid modulus.
int gram_determinant_valuation(const ContextPtr& ctx);
/// The unique c with Tr(c e_j) = values[j] for all basis vectors e_j.
PadicElement trace_dual_solve(const ContextPtr& ctx, const std::vector<PadicElement>& values);

// ---- unramified extensions -----------------------------------------------------------

/// Z_{q^d} over Z_q, realized as an absolute context of degree a*d together
/// with an embedding of the base generator.
class Extension {
public:
    static std::shared_ptr<const Extension> make(const ContextPtr& base, int d);

    const ContextPtr& base() const { return base_; }
    const ContextPtr& big() const { return big_; }
    int relative_degree() const { return d_; }
    /// Coordinates (in the big context) of the image of the base generator.
    const std::vector<u64>& generator_image() const { return eps_; }

    PadicElement embed(const PadicElement& x) const;
    /// Inverse of `embed`; throws InputError if y is not in the image.
    PadicElement restrict(const PadicElement& y) const;
    /// Relative trace Tr_{Z_{q^d}/Z_q}, returned in the base context.
    PadicElement trace_over(const PadicElement& y) const;
    /// Raw embedding of base coordinates into big coordinates.
    void embed_raw(const u64* x, u64* out) const;

private:
    ContextPtr base_;
    ContextPtr big_;
    int d_ = 1;
    std::vector<u64> eps_;
    std::vector<std::vector<u64>> eps_powers_;  // coords of eps^b, b < a
    std::vector<int> pivot_rows_;
    std::vector<u64> pivot_inverse_;  // a x a, row-major
};

using ExtensionPtr = std::shared_ptr<const Extension>;

}  // namespace wittchar
