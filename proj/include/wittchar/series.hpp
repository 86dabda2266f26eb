#pragma once

// Truncated power series over Z_q with per-coefficient precision.
//
// A series stores a_0..a_K together with a tail certificate: an integer t with
// v_p(a_l) >= t for every omitted l > K. kExactTail means the omitted
// coefficients are zero (a polynomial) and kUnknownTail that nothing is known.
// Every operation propagates the certificate, so callers can decide whether
// truncation at K is harmless at a given precision.

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "wittchar/padic.hpp"

namespace wittchar {

inline constexpr int kExactTail = INT_MAX;
inline constexpr int kUnknownTail = -1;

class TruncatedSeries {
public:
    TruncatedSeries() = default;
    /// The zero polynomial.
    TruncatedSeries(ContextPtr ctx, int K, std::string var = "lambda");
    static TruncatedSeries one(ContextPtr ctx, int K, std::string var = "lambda");
    /// A polynomial with the given coefficients, padded with exact zeros to K.
    static TruncatedSeries from_coeffs(ContextPtr ctx, std::vector<PadicElement> coeffs, int K,
                                       std::string var = "lambda");

    const ContextPtr& context() const { return ctx_; }
    const std::string& var() const { return var_; }
    void set_var(std::string v) { var_ = std::move(v); }
    int K() const { return static_cast<int>(a_.size()) - 1; }
    const PadicElement& operator[](int k) const { return a_[k]; }
    const std::vector<PadicElement>& coeffs() const { return a_; }
    void set(int k, PadicElement x);

    int tail() const { return tail_; }
    void set_tail(int t) { tail_ = t; }
    bool tail_known() const { return tail_ != kUnknownTail; }

    /// Smallest coefficient precision.
    int min_precision() const;
    /// Smallest coefficient valuation over 1 <= k <= K (capped by precision).
    int min_valuation_nonconstant() const;
    bool is_one() const;

    /// Same series truncated to degree K2 <= K.
    TruncatedSeries truncate(int K2) const;
    /// Smallest cutoff K2 <= K whose truncation certifies a tail >= target, or
    /// -1 when even the full series does not.
    int cutoff_for(int target) const;
    /// Caps every coefficient precision at `prec`.
    TruncatedSeries reduce_precision(int prec) const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    TruncatedSeries scale(const PadicElement& c) const;

    /// f(var^m), kept at the same K.
    TruncatedSeries substitute_power(int m) const;
    /// Applies sigma^j to every coefficient.
    TruncatedSeries frobenius(int j) const;

    /// Sum a_k x^k for |x| <= 1. The result precision is capped by the tail
    /// certificate; an unknown tail raises TailError.
    PadicElement evaluate(const PadicElement& x) const;

    /// Multiplicative inverse; the constant term must be a unit.
    TruncatedSeries inverse() const;
    /// Log(f) = sum (-1)^(m+1) (f - 1)^m / m for f = 1 mod (p, var).
    TruncatedSeries log() const;
    /// Exp(f) for f with zero constant term and all coefficients divisible by p.
    TruncatedSeries exp() const;

    /// min over k of v_p(a_k - b_k), capped at the joint precision.
    int agreement(const TruncatedSeries& o) const;

    std::string to_string() const;

private:
    ContextPtr ctx_;
    std::string var_ = "lambda";
    std::vector<PadicElement> a_;
    int tail_ = kExactTail;
};

/// B_pi(var^m) = sum_j binom(var^m, j) pi^j truncated at var^K, for v_p(pi) >= 1.
/// Each coefficient a_k of B_pi lies in (pi^k / k!) Z_p, which also gives the
/// tail certificate.
TruncatedSeries binomial_series(const PadicElement& pi, int m, int K);

/// The series with every coefficient embedded into Z_{q^d}.
TruncatedSeries embed(const Extension& ext, const TruncatedSeries& h);

/// Exp(z var^i) truncated at var^K, for v_p(z) >= 1.
TruncatedSeries monomial_exp(const PadicElement& z, int i, int K);

}  // namespace wittchar
