#pragma once

// Characters of 1 + tF_q[[t]] given by sequences (c_i)_{(i,p)=1} in Z_q, and
// the maps between such sequences and power series in lambda.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wittchar/series.hpp"
#include "wittchar/witt.hpp"

namespace wittchar {

/// Lower bounds v_p(c_i) >= bound(i) for indices outside the explicit support.
struct TailSchedule {
    enum class Kind { Zero, Constant, Linear, Log };
    Kind kind = Kind::Zero;
    // Linear: floor(num * i / den) + offset.  Log: floor(num * floor(log_p i) / den) + offset.
    // Constant: offset. Constant is a truncation certificate, not a decay rate.
    long long num = 0;
    long long den = 1;
    int offset = 0;

    static TailSchedule zero() { return {}; }
    static TailSchedule constant(int v) { return {Kind::Constant, 0, 1, v}; }
    static TailSchedule linear(long long num, long long den, int offset) { return {Kind::Linear, num, den, offset}; }
    static TailSchedule log(long long num, long long den, int offset) { return {Kind::Log, num, den, offset}; }

    /// kExactTail for Zero.
    int bound(int i, u64 p) const;
    std::string kind_name() const;
    static Kind parse_kind(const std::string& name);
};

class CharSequence {
public:
    CharSequence() = default;
    /// Indices must be positive and prime to p; values live in ctx.
    CharSequence(ContextPtr ctx, std::map<int, PadicElement> support = {}, TailSchedule schedule = {});

    const ContextPtr& context() const { return ctx_; }
    const std::map<int, PadicElement>& support() const { return support_; }
    const TailSchedule& schedule() const { return schedule_; }

    /// c_i for a supported i, exact zero otherwise.
    PadicElement coefficient(int i) const;
    /// All supported values are zero and the schedule is Zero.
    bool is_zero() const;
    int max_index() const { return support_.empty() ? 0 : support_.rbegin()->first; }

    /// Smallest schedule bound over unsupported prime-to-p indices i with
    /// from < i <= to (to < 0 means unbounded). kExactTail when there are none.
    int tail_min(int from, int to) const;
    /// Throws TailError unless every unsupported index up to `upto` (< 0: all)
    /// is certified to have valuation >= threshold.
    void require_tail(int upto, int threshold, const std::string& op) const;

private:
    ContextPtr ctx_;
    std::map<int, PadicElement> support_;
    TailSchedule schedule_;
};

// ---- character values -------------------------------------------------------------------

/// Evaluates chi on 1-unit polynomials. Holds a cache of extension rings.
class CharacterEvaluator {
public:
    explicit CharacterEvaluator(CharSequence seq);

    const CharSequence& sequence() const { return seq_; }
    Decomposer& decomposer() { return dec_; }

    /// prod_i (1+p)^{Tr_{Z_{q^d}/Z_p}(c_i lambda^i)}, in the prime context.
    PadicElement irreducible(const OneUnitPoly& f);
    /// Product over the irreducible factors with multiplicity.
    PadicElement eval(const OneUnitPoly& g);
    /// (1+p)^{sum_i Tr_{Z_q/Z_p}(c_i coord_i(g))}.
    PadicElement eval_by_pairing(const OneUnitPoly& g);
    /// The exponent sum_i Tr(c_i lambda^i) for lambda in an extension ring.
    PadicElement exponent_at(const Extension& ext, const PadicElement& lambda) const;

private:
    CharSequence seq_;
    Decomposer dec_;
};

// ---- sequence -> series -------------------------------------------------------------------

/// g(lambda) = prod_i Exp(c_i Log(1+p) lambda^i) truncated at lambda^K.
TruncatedSeries f_map(const CharSequence& seq, int K);

/// pi_ij with 1 + pi_ij = (1+p)^{sigma^j(c_i)}.
PadicElement pi_ij(const CharSequence& seq, int i, int j);

/// O_pi(lambda) = prod_{j<a} prod_i B_{pi_ij}(lambda^{i p^j}) truncated at lambda^K.
TruncatedSeries o_pi(const CharSequence& seq, int K);

// ---- series -> sequence -------------------------------------------------------------------

/// b_i = sum_j sigma^{-j}(a_{i p^j}) for i prime to p; the constant term and
/// the p-divisible exponents are dropped.
TruncatedSeries psi_p(const TruncatedSeries& h);

/// d_i = [lambda^i] psi_p(Log h) / Log(1+p). Every prime-to-p i <= K is put in
/// the support; the schedule carries the tail certificate of h.
CharSequence g_map(const TruncatedSeries& h);

// ---- convergence ----------------------------------------------------------------------------

struct ConvergenceReport {
    std::string classification;  // "overconvergent", "log-convergent", "convergent"
    bool vacuous = false;        // no resolved nonzero coefficient in the window
    int k_min = 1;
    int k_max = 1;
    /// Window lower bounds: min v_p(a_k)/k and min v_p(a_k)/log_p k (k >= 2).
    double slope_window_min = 0;
    double log_constant_window_min = 0;
    /// Last slope of the lower hull of (k, v_p(a_k)) and of (log_p k, v_p(a_k)).
    double slope_terminal = 0;
    double log_constant = 0;
    std::vector<int> resolved;  // exponents used
    std::vector<int> censored;  // exponents whose valuation is only bounded by precision
};

/// Finite-window estimates of the liminf quantities; not proofs.
ConvergenceReport classify_convergence(const TruncatedSeries& h, int k_min, int k_max);

/// Default u: u_i = 1 + (Thue-Morse bit of i), an aperiodic {1, 2} sequence.
std::vector<long long> default_gC_u(int count);

/// g_C(lambda) = 1 + sum_{i>=1} p^{ceil(C i)+1} u_i lambda^{p^i - 1} truncated at
/// lambda^K, with C = c_num / c_den. Missing u entries use default_gC_u.
TruncatedSeries example_gC(const ContextPtr& ctx, long long c_num, long long c_den, std::vector<long long> u, int K);

}  // namespace wittchar
