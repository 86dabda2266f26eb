#include "wittchar/series.hpp"

#include <algorithm>
#include <sstream>

#include "wittchar/errors.hpp"

namespace wittchar {

namespace {

bool exact_zero(const PadicElement& x) {
    return x.precision() == x.context()->capacity() && x.is_zero();
}

// Lower bound on the valuation; exact zeros are unbounded.
int vbound(const PadicElement& x) { return exact_zero(x) ? kExactTail : x.valuation(); }

int add_bounds(int a, int b) {
    if (a == kUnknownTail || b == kUnknownTail) return kUnknownTail;
    if (a == kExactTail || b == kExactTail) return kExactTail;
    return a + b;
}

int min_bound(int a, int b) {
    if (a == kUnknownTail || b == kUnknownTail) return kUnknownTail;
    return std::min(a, b);
}

// min over k > k0 of k*v - v_p(k!), the valuation floor of pi^k / k!.
int factorial_floor_beyond(long long k0, int v, u64 p) {
    long long best = kExactTail;
    for (long long k = k0 + 1;; ++k) {
        long long b = k * v - vp_factorial(static_cast<u64>(k), p);
        best = std::min(best, b);
        // k (v - 1/(p-1)) bounds every later term from below.
        if (k * (static_cast<long long>(p - 1) * v - 1) >= best * static_cast<long long>(p - 1)) break;
    }
    return static_cast<int>(std::min<long long>(best, kExactTail - 1));
}

}  // namespace

TruncatedSeries::TruncatedSeries(ContextPtr ctx, int K, std::string var)
    : ctx_(std::move(ctx)), var_(std::move(var)) {
    if (K < 0) throw InputError("series cutoff must be >= 0");
    a_.assign(K + 1, PadicElement(ctx_));
}

TruncatedSeries TruncatedSeries::one(ContextPtr ctx, int K, std::string var) {
    TruncatedSeries s(std::move(ctx), K, std::move(var));
    s.a_[0] = PadicElement::one(s.ctx_);
    return s;
}

TruncatedSeries TruncatedSeries::from_coeffs(ContextPtr ctx, std::vector<PadicElement> coeffs, int K,
                                             std::string var) {
    if (static_cast<int>(coeffs.size()) > K + 1) throw InputError("more coefficients than the cutoff allows");
    TruncatedSeries s(std::move(ctx), K, std::move(var));
    for (size_t k = 0; k < coeffs.size(); ++k) s.set(static_cast<int>(k), std::move(coeffs[k]));
    return s;
}

void TruncatedSeries::set(int k, PadicElement x) {
    if (!x.context()->same_ring(*ctx_)) throw InputError("series coefficient from a different context");
    a_.at(k) = std::move(x);
}

int TruncatedSeries::min_precision() const {
    int m = ctx_->capacity();
    for (const auto& x : a_) m = std::min(m, x.precision());
    return m;
}

int TruncatedSeries::min_valuation_nonconstant() const {
    int m = kExactTail;
    for (int k = 1; k <= K(); ++k) m = std::min(m, vbound(a_[k]));
    return m;
}

bool TruncatedSeries::is_one() const {
    if (!(a_[0] - PadicElement::one(ctx_)).is_zero()) return false;
    for (int k = 1; k <= K(); ++k)
        if (!a_[k].is_zero()) return false;
    return true;
}

TruncatedSeries TruncatedSeries::truncate(int K2) const {
    if (K2 > K()) throw InputError("truncate: new cutoff exceeds the current one");
    TruncatedSeries r = *this;
    int t = tail_;
    for (int k = K2 + 1; k <= K(); ++k) t = min_bound(t, vbound(a_[k]));
    r.a_.resize(K2 + 1);
    r.tail_ = t;
    return r;
}

int TruncatedSeries::cutoff_for(int target) const {
    int t = tail_;
    if (t == kUnknownTail || t < target) return -1;
    int k = K();
    while (k > 0) {
        t = min_bound(t, vbound(a_[k]));
        if (t < target) break;
        --k;
    }
    return k;
}

TruncatedSeries TruncatedSeries::reduce_precision(int prec) const {
    TruncatedSeries r = *this;
    for (auto& x : r.a_) x = x.reduce_precision(prec);
    if (r.tail_ != kUnknownTail) r.tail_ = std::min(r.tail_, prec);
    return r;
}

static TruncatedSeries add_sub(const TruncatedSeries& a, const TruncatedSeries& b, bool sub) {
    const int K = std::min(a.K(), b.K());
    TruncatedSeries r = a.truncate(K);
    int t = min_bound(r.tail(), b.truncate(K).tail());
    for (int k = 0; k <= K; ++k) r.set(k, sub ? a[k] - b[k] : a[k] + b[k]);
    r.set_tail(t);
    return r;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) { return add_sub(a, b, false); }
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return add_sub(a, b, true); }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int K = std::min(a.K(), b.K());
    TruncatedSeries r(a.ctx_, K, a.var_);
    std::vector<int> va(a.K() + 1), vb(b.K() + 1);
    for (int i = 0; i <= a.K(); ++i) va[i] = vbound(a.a_[i]);
    for (int j = 0; j <= b.K(); ++j) vb[j] = vbound(b.a_[j]);
    for (int i = 0; i <= K; ++i) {
        if (va[i] == kExactTail) continue;
        for (int j = 0; i + j <= K; ++j) {
            if (vb[j] == kExactTail) continue;
            r.a_[i + j] += a.a_[i] * b.a_[j];
        }
    }
    // Omitted coefficients l > K: products of stored terms, or one factor from a tail.
    int t = kExactTail;
    for (int i = 0; i <= a.K(); ++i) {
        if (va[i] == kExactTail) continue;
        for (int j = std::max(0, K + 1 - i); j <= b.K(); ++j) t = std::min(t, add_bounds(va[i], vb[j]));
    }
    const int mina = *std::min_element(va.begin(), va.end());
    const int minb = *std::min_element(vb.begin(), vb.end());
    t = min_bound(t, add_bounds(a.tail_, std::min(minb, b.tail_ == kUnknownTail ? 0 : b.tail_)));
    t = min_bound(t, add_bounds(b.tail_, std::min(mina, a.tail_ == kUnknownTail ? 0 : a.tail_)));
    r.tail_ = t;
    return r;
}

TruncatedSeries TruncatedSeries::scale(const PadicElement& c) const {
    TruncatedSeries r = *this;
    for (auto& x : r.a_) x *= c;
    r.tail_ = add_bounds(tail_, vbound(c));
    return r;
}

TruncatedSeries TruncatedSeries::substitute_power(int m) const {
    if (m < 1) throw InputError("substitute_power: exponent must be >= 1");
    TruncatedSeries r(ctx_, K(), var_);
    int t = tail_;
    for (int k = 0; k <= K(); ++k) {
        if (static_cast<long long>(k) * m <= K())
            r.a_[k * m] = a_[k];
        else
            t = min_bound(t, vbound(a_[k]));
    }
    r.tail_ = t;
    return r;
}

TruncatedSeries TruncatedSeries::frobenius(int j) const {
    TruncatedSeries r = *this;
    for (auto& x : r.a_) x = wittchar::frobenius(x, j);
    return r;
}

PadicElement TruncatedSeries::evaluate(const PadicElement& x) const {
    if (tail_ == kUnknownTail) throw TailError("evaluate: the series tail is not certified");
    PadicElement acc(ctx_);
    for (int k = K(); k >= 0; --k) acc = acc * x + a_[k];
    if (tail_ != kExactTail) acc = acc.reduce_precision(tail_);
    return acc;
}

TruncatedSeries TruncatedSeries::inverse() const {
    const PadicElement b0 = a_[0].inverse();
    TruncatedSeries r(ctx_, K(), var_);
    r.a_[0] = b0;
    for (int k = 1; k <= K(); ++k) {
        PadicElement s(ctx_);
        for (int i = 1; i <= k; ++i)
            if (!exact_zero(a_[i])) s += a_[i] * r.a_[k - i];
        r.a_[k] = -(b0 * s);
    }
    bool constant = tail_ == kExactTail;
    for (int k = 1; k <= K() && constant; ++k) constant = exact_zero(a_[k]);
    r.tail_ = constant ? kExactTail : kUnknownTail;
    return r;
}

TruncatedSeries TruncatedSeries::log() const {
    const u64 p = ctx_->prime();
    TruncatedSeries z = *this;
    z.a_[0] -= PadicElement::one(ctx_);
    int mu = std::min(vbound(z.a_[0]), z.min_valuation_nonconstant());
    if (tail_ != kUnknownTail) mu = std::min(mu, tail_);
    if (mu < 1) throw InputError("log: series is not congruent to 1 mod (p, " + var_ + ")");
    const int target = min_precision();
    TruncatedSeries result(ctx_, K(), var_);
    if (mu == kExactTail) return result;
    TruncatedSeries zm = z;
    for (long long m = 1;; ++m) {
        TruncatedSeries term = zm;
        for (auto& x : term.a_) x = x.divide_int(m);
        if (term.tail_ != kExactTail && term.tail_ != kUnknownTail) term.tail_ -= vp(static_cast<u64>(m), p);
        result = (m % 2) ? result + term : result - term;
        const long long nm = m + 1;
        if (nm * mu - floor_log(static_cast<u64>(nm), p) >= target) break;
        zm = zm * z;
    }
    return result.reduce_precision(target);
}

TruncatedSeries TruncatedSeries::exp() const {
    const u64 p = ctx_->prime();
    int mu = std::min(vbound(a_[0]), min_valuation_nonconstant());
    if (tail_ != kUnknownTail) mu = std::min(mu, tail_);
    if (mu < 1) throw InputError("exp: coefficients must be divisible by p");
    const int target = min_precision();
    TruncatedSeries result = one(ctx_, K(), var_);
    if (mu == kExactTail) return result;
    TruncatedSeries term = result;
    for (long long m = 1;; ++m) {
        term = term * *this;
        for (auto& x : term.a_) x = x.divide_int(m);
        if (term.tail_ != kExactTail && term.tail_ != kUnknownTail) term.tail_ -= vp(static_cast<u64>(m), p);
        result = result + term;
        const long long nm = m + 1;
        if (nm * mu * static_cast<long long>(p - 1) - m >= static_cast<long long>(target) * static_cast<long long>(p - 1))
            break;
    }
    return result.reduce_precision(target);
}

int TruncatedSeries::agreement(const TruncatedSeries& o) const {
    int v = kExactTail;
    for (int k = 0; k <= std::min(K(), o.K()); ++k) v = std::min(v, a_[k].agreement(o.a_[k]));
    return v;
}

std::string TruncatedSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= K(); ++k) {
        if (exact_zero(a_[k])) continue;
        os << (first ? "" : " + ") << a_[k].to_string() << "*" << var_ << "^" << k;
        first = false;
    }
    if (first) os << "0";
    os << " + O(" << var_ << "^" << K() + 1 << ")";
    return os.str();
}

TruncatedSeries binomial_series(const PadicElement& pi, int m, int K) {
    if (m < 1) throw InputError("binomial_series: m must be >= 1");
    const auto& ctx = pi.context();
    const u64 p = ctx->prime();
    const u64 mod = ctx->modulus_value();
    const int v = pi.valuation();
    if (v < 1) throw InputError("binomial_series: v_p(pi) must be >= 1, got pi = " + pi.to_string());
    if (exact_zero(pi)) return TruncatedSeries::one(ctx, K);
    const int target = pi.precision();
    const int kmax = K / m;

    // Terms binom(X, j) pi^j with j((p-1)v - 1) >= target (p-1) vanish mod p^target.
    int J = 0;
    while (static_cast<long long>(J + 1) * (static_cast<long long>(p - 1) * v - 1) <
           static_cast<long long>(target) * static_cast<long long>(p - 1))
        ++J;
    const int kcap = std::min(J, kmax);

    std::vector<PadicElement> a(kcap + 1, PadicElement(ctx).reduce_precision(target));
    std::vector<u64> fall{1};  // coefficients of X(X-1)...(X-j+1)
    PadicElement w = PadicElement::one(ctx);  // pi^j / j!
    for (int j = 0; j <= J; ++j) {
        if (j > 0) {
            std::vector<u64> next(fall.size() + 1, 0);
            const u64 shift = static_cast<u64>(j - 1) % mod;
            for (size_t k = 0; k < fall.size(); ++k) {
                next[k + 1] = add_mod(next[k + 1], fall[k], mod);
                next[k] = sub_mod(next[k], mul_mod(shift, fall[k], mod), mod);
            }
            fall.swap(next);
            w = (w * pi).divide_int(j);
        }
        for (int k = 0; k <= std::min(j, kcap); ++k)
            if (fall[k]) a[k] += w.mul_int(static_cast<long long>(fall[k]));
    }
    TruncatedSeries s(ctx, K);
    for (int k = 0; k <= kcap; ++k) s.set(k * m, a[k]);
    for (int k = kcap + 1; k <= kmax; ++k) s.set(k * m, PadicElement(ctx).reduce_precision(target));
    s.set_tail(factorial_floor_beyond(kmax, v, p));
    return s;
}

TruncatedSeries monomial_exp(const PadicElement& z, int i, int K) {
    if (i < 1) throw InputError("monomial_exp: exponent must be >= 1");
    const auto& ctx = z.context();
    const u64 p = ctx->prime();
    const int v = z.valuation();
    if (v < 1) throw InputError("monomial_exp: v_p(z) must be >= 1");
    TruncatedSeries s = TruncatedSeries::one(ctx, K);
    PadicElement term = PadicElement::one(ctx);
    const int mmax = K / i;
    for (int m = 1; m <= mmax; ++m) {
        term = (term * z).divide_int(m);
        s.set(m * i, term);
    }
    s.set_tail(factorial_floor_beyond(mmax, v, p));
    return s;
}

TruncatedSeries embed(const Extension& ext, const TruncatedSeries& h) {
    TruncatedSeries r(ext.big(), h.K(), h.var());
    for (int k = 0; k <= h.K(); ++k)
        if (!exact_zero(h[k])) r.set(k, ext.embed(h[k]));
    r.set_tail(h.tail());
    return r;
}

}  // namespace wittchar
