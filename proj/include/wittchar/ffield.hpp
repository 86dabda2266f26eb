#pragma once

// Finite fields F_q as residue fields of p-adic contexts, polynomials over
// them, and the 1-unit polynomials 1 + tF_q[t].

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wittchar/padic.hpp"

namespace wittchar {

/// Coordinates over F_p on the power basis of the residue field. Ordered
/// lexicographically from coordinate 0.
struct FqElement {
    std::vector<u64> c;
    friend bool operator==(const FqElement& a, const FqElement& b) { return a.c == b.c; }
    friend bool operator!=(const FqElement& a, const FqElement& b) { return a.c != b.c; }
    friend bool operator<(const FqElement& a, const FqElement& b) { return lex_less(a.c, b.c); }
};

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

class FiniteField {
public:
    /// The residue field Z_q / p of a context.
    static FieldPtr make(ContextPtr ctx);

    const ContextPtr& context() const { return ctx_; }
    u64 prime() const { return p_; }
    int degree() const { return n_; }
    /// Number of elements; throws BudgetExceeded if it does not fit in 63 bits.
    u64 size() const;

    FqElement zero() const { return FqElement{std::vector<u64>(n_, 0)}; }
    FqElement one() const;
    FqElement from_int(long long v) const;
    /// The element whose coordinate tuple has the given rank in lex order.
    FqElement element(u64 index) const;
    u64 index(const FqElement& x) const;

    bool is_zero(const FqElement& x) const;
    FqElement add(const FqElement& x, const FqElement& y) const;
    FqElement sub(const FqElement& x, const FqElement& y) const;
    FqElement neg(const FqElement& x) const;
    FqElement mul(const FqElement& x, const FqElement& y) const;
    FqElement inv(const FqElement& x) const;
    FqElement pow(const FqElement& x, u64 e) const;
    /// x^(p^j); j may be negative.
    FqElement frobenius(const FqElement& x, int j = 1) const;
    /// Smallest d >= 1 with x^(p^(step*d)) = x; the degree of x over F_{p^step}.
    int orbit_length(const FqElement& x, int step) const;

    bool is_primitive(const FqElement& x) const;
    /// First element in lex order generating the multiplicative group.
    FqElement primitive_element() const;

    FqElement reduce(const PadicElement& x) const;
    PadicElement teichmuller(const FqElement& x) const;

    std::string to_string(const FqElement& x) const;

private:
    ContextPtr ctx_;
    u64 p_ = 0;
    int n_ = 0;
    std::vector<u64> modulus_;                // reduced mod p, monic
    std::vector<std::vector<u64>> frob_;      // sigma^j mod p
};

// ---- polynomials over F_q ------------------------------------------------------

using FqPoly = std::vector<FqElement>;  // ascending, trimmed (no zero leading term)

namespace fq {

void trim(const FiniteField& F, FqPoly& f);
int degree(const FqPoly& f);
FqPoly add(const FiniteField& F, const FqPoly& f, const FqPoly& g);
FqPoly sub(const FiniteField& F, const FqPoly& f, const FqPoly& g);
FqPoly mul(const FiniteField& F, const FqPoly& f, const FqPoly& g);
/// Quotient and remainder.
std::pair<FqPoly, FqPoly> divmod(const FiniteField& F, FqPoly f, const FqPoly& g);
FqPoly mod(const FiniteField& F, const FqPoly& f, const FqPoly& g);
FqPoly monic(const FiniteField& F, FqPoly f);
FqPoly gcd(const FiniteField& F, FqPoly f, FqPoly g);
FqPoly powmod(const FiniteField& F, FqPoly base, u64 e, const FqPoly& m);
/// base^(p^k) mod m.
FqPoly frobenius_powmod(const FiniteField& F, FqPoly base, int k, const FqPoly& m);
FqPoly derivative(const FiniteField& F, const FqPoly& f);
FqElement eval(const FiniteField& F, const FqPoly& f, const FqElement& x);
/// Monic irreducible factors with multiplicity (sorted by degree, then lex).
std::vector<std::pair<FqPoly, int>> factor(const FiniteField& F, const FqPoly& f);
bool is_irreducible(const FiniteField& F, const FqPoly& f);

}  // namespace fq

// ---- 1-unit polynomials ---------------------------------------------------------------

/// A polynomial in 1 + tF_q[t]: constant term 1, nonzero leading coefficient.
class OneUnitPoly {
public:
    OneUnitPoly() = default;
    /// Validates the constant term and trims trailing zeros.
    OneUnitPoly(FieldPtr field, FqPoly coeffs);
    static OneUnitPoly one(FieldPtr field);

    const FieldPtr& field() const { return field_; }
    const FqPoly& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    friend OneUnitPoly operator*(const OneUnitPoly& a, const OneUnitPoly& b);
    friend bool operator==(const OneUnitPoly& a, const OneUnitPoly& b) { return a.c_ == b.c_; }
    /// Degree first, then lex on (c_1, ..., c_d).
    friend bool operator<(const OneUnitPoly& a, const OneUnitPoly& b);

    std::string to_string() const;

private:
    FieldPtr field_;
    FqPoly c_;
};

/// Irreducible members of 1 + tF_q[t] with degree <= D, each once, by degree
/// and then lexicographically on (c_1, ..., c_d).
std::vector<OneUnitPoly> enumerate_irreducibles(const FieldPtr& field, int D, u64 budget = 0);
/// (1/d) sum_{e|d} mu(e) q^(d/e), minus 1 for d = 1 (the polynomial t).
u64 irreducible_count(u64 q, int d);

/// Irreducible factors with constant term 1, with multiplicity, sorted.
std::vector<OneUnitPoly> factor_one_unit(const OneUnitPoly& g);

/// A field F_{q^d} built as the residue field of an unramified extension.
struct ExtensionField {
    ExtensionPtr ext;
    FieldPtr field;
};

/// Builds F_{q^d} together with the embedding Z_q -> Z_{q^d}.
ExtensionField make_extension_field(const FieldPtr& base, int d);
/// Image of a base-field element in the extension field.
FqElement embed(const ExtensionField& E, const FqElement& x);

/// The reciprocal root of an irreducible f of degree d whose coordinate tuple
/// in F_{q^d} is lexicographically smallest.
std::pair<ExtensionField, FqElement> reciprocal_root(const OneUnitPoly& f);
/// Same, inside a caller-supplied F_{q^d}.
FqElement reciprocal_root_in(const OneUnitPoly& f, const ExtensionField& E);

/// Elements of F_{q^k} in lex order, each annotated with its degree over F_q.
class FieldEnumerator {
public:
    FieldEnumerator(const FieldPtr& base, int k, u64 budget);
    const ExtensionField& extension() const { return ext_; }
    u64 size() const { return size_; }
    /// Writes the next element and its degree; false when exhausted.
    bool next(FqElement& x, int& degree);

private:
    ExtensionField ext_;
    int a_ = 1;
    int k_ = 1;
    u64 size_ = 0;
    u64 pos_ = 0;
};

inline constexpr u64 kDefaultBudget = 1000000;

}  // namespace wittchar
