#pragma once

// L-functions of characters and of power series, characteristic series, and
// Newton polygons.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wittchar/character.hpp"

namespace wittchar {

class PointCache;

struct LOptions {
    /// Include lambda-bar = 0 in the power sums.
    bool include_zero = false;
    /// Cap on the number of field elements enumerated for one F_{q^k}.
    u64 budget = kDefaultBudget;
    /// For the zero sequence (or h = 1) use element counts instead of enumeration.
    bool trivial_shortcut = true;
    /// Shared point tables; a private cache is used when null.
    PointCache* cache = nullptr;
};

/// A series in s with constant term 1.
struct LSeries {
    TruncatedSeries series;
    std::string provenance;  // euler | exp | series | characteristic
    int D() const { return series.K(); }
};

/// The nonzero elements of F_{q^k} as powers omega^j of the Teichmueller lift
/// of a primitive element, grouped into orbits of x -> x^q. Each orbit is
/// represented by its smallest exponent j.
class PointTables {
public:
    PointTables(const ContextPtr& base, int k, u64 budget);

    const ExtensionField& extension() const { return ext_; }
    int k() const { return k_; }
    u64 field_size() const { return Q_; }
    size_t orbit_count() const { return sizes_.size(); }
    /// Orbit size, the degree of the representative over F_q.
    int orbit_size(size_t r) const { return sizes_[r]; }
    /// j_r with lambda_r = omega^(j_r).
    u64 representative_exponent(size_t r) const { return rep_exponent_[r]; }
    const u64* representative_raw(size_t r) const { return power_raw(rep_exponent_[r]); }
    /// omega^t for 0 <= t < Q - 1, coordinates in the big context.
    const u64* power_raw(u64 t) const { return powers_.data() + t * static_cast<u64>(n_); }
    PadicElement representative(size_t r) const;
    /// T[r * a + b] = Tr_{Z_{q^k}/Z_p}(e_b lambda_r^i) mod p^cap, where e_b is the
    /// b-th power basis element of Z_q. Built on first use.
    const std::vector<u64>& trace_table(int i) const;

private:
    ContextPtr base_;
    int k_;
    int n_;
    u64 Q_;
    ExtensionField ext_;
    std::vector<u64> powers_;  // (Q - 1) x n
    std::vector<u64> rep_exponent_;
    std::vector<int> sizes_;
    std::vector<std::vector<u64>> basis_functionals_;  // u -> Tr(e_b u) on the big power basis
    mutable std::map<int, std::vector<u64>> traces_;
};

/// Point tables per k over one base ring.
class PointCache {
public:
    explicit PointCache(ContextPtr base, u64 budget = kDefaultBudget) : base_(std::move(base)), budget_(budget) {}
    const ContextPtr& base() const { return base_; }
    const PointTables& tables(int k);

private:
    ContextPtr base_;
    u64 budget_;
    std::map<int, std::unique_ptr<PointTables>> tables_;
};

/// S_k(chi) = sum over lambda-bar in F_{q^k}^* of chi(f_lambda)^{k / deg}.
PadicElement power_sum(const CharSequence& seq, int k, const LOptions& opt = {});
/// S_k(h) = sum over lambda-bar of prod_{j<k} h(lambda^{q^j}).
PadicElement power_sum(const TruncatedSeries& h, int k, const LOptions& opt = {});

/// exp(sum_k S_k s^k / k) truncated at s^D; S[0] is ignored. Throws
/// PrecisionError if a coefficient fails to be integral.
TruncatedSeries exp_of_power_sums(const ContextPtr& ctx, const std::vector<PadicElement>& S);

LSeries l_exp(const CharSequence& seq, int D, const LOptions& opt = {});
/// Euler product over Frobenius orbits of exact degree e <= D.
LSeries l_euler(const CharSequence& seq, int D, const LOptions& opt = {});
/// Euler product over enumerate_irreducibles, with values from reciprocal roots.
LSeries l_euler_by_polynomials(const CharSequence& seq, int D, const LOptions& opt = {});
/// L(h/F_q, s) through its power sums.
LSeries l_of_series(const TruncatedSeries& h, int D, const LOptions& opt = {});

/// Smallest k with a k >= N; factors L(q^k s) beyond it are 1 mod p^N.
int characteristic_kmax(int a, int N);
/// prod_{k=0}^{kmax} L(q^k s) truncated at s^D.
LSeries characteristic_series(const LSeries& L, int a);

struct QuotientReport {
    bool pass = false;
    int required = 0;               // digits demanded of every coefficient
    std::vector<int> discrepancy;  // v_p(C_m - (L C(qs))_m), capped at precision
};

/// Checks C(s) = L(s) C(qs) mod (s^{D+1}, p^{N - loss}).
QuotientReport quotient_check(const LSeries& C, const LSeries& L, int a, int loss);

struct NewtonPolygon {
    struct Vertex {
        int k;
        int v;
    };
    struct Slope {
        long long num;
        long long den;
        double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    };
    std::vector<Vertex> points;    // resolved (k, v_p(a_k))
    std::vector<Vertex> vertices;  // lower hull
    std::vector<Slope> slopes;     // nondecreasing
    std::vector<int> censored;     // k with a_k = 0 to its precision
};

NewtonPolygon newton_polygon(const TruncatedSeries& s);

}  // namespace wittchar
