#include "wittchar/character.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wittchar/errors.hpp"

namespace wittchar {

// ---- TailSchedule ------------------------------------------------------------------------

int TailSchedule::bound(int i, u64 p) const {
    switch (kind) {
        case Kind::Zero:
            return kExactTail;
        case Kind::Constant:
            return offset;
        case Kind::Linear:
            return static_cast<int>(num * i / den) + offset;
        case Kind::Log:
            return static_cast<int>(num * floor_log(static_cast<u64>(i), p) / den) + offset;
    }
    return kExactTail;
}

std::string TailSchedule::kind_name() const {
    switch (kind) {
        case Kind::Zero:
            return "zero";
        case Kind::Constant:
            return "constant";
        case Kind::Linear:
            return "linear";
        case Kind::Log:
            return "log";
    }
    return "zero";
}

TailSchedule::Kind TailSchedule::parse_kind(const std::string& name) {
    if (name == "zero") return Kind::Zero;
    if (name == "constant") return Kind::Constant;
    if (name == "linear") return Kind::Linear;
    if (name == "log") return Kind::Log;
    throw InputError("unknown tail schedule kind '" + name + "'");
}

// ---- CharSequence --------------------------------------------------------------------------

CharSequence::CharSequence(ContextPtr ctx, std::map<int, PadicElement> support, TailSchedule schedule)
    : ctx_(std::move(ctx)), support_(std::move(support)), schedule_(schedule) {
    const u64 p = ctx_->prime();
    for (auto& [i, c] : support_) {
        if (i < 1 || static_cast<u64>(i) % p == 0)
            throw InputError("sequence index " + std::to_string(i) + " must be positive and prime to p");
        if (!c.context()->same_ring(*ctx_)) throw InputError("sequence value c_" + std::to_string(i) + " lives in another ring");
    }
    if (schedule_.den <= 0 || schedule_.num < 0) throw InputError("tail schedule needs num >= 0 and den > 0");
}

PadicElement CharSequence::coefficient(int i) const {
    auto it = support_.find(i);
    return it == support_.end() ? PadicElement(ctx_) : it->second;
}

bool CharSequence::is_zero() const {
    if (schedule_.kind != TailSchedule::Kind::Zero) return false;
    return std::all_of(support_.begin(), support_.end(), [](const auto& e) { return e.second.is_zero(); });
}

int CharSequence::tail_min(int from, int to) const {
    if (schedule_.kind == TailSchedule::Kind::Zero) return kExactTail;
    const u64 p = ctx_->prime();
    // The schedules are nondecreasing in i, so the first unsupported index wins.
    for (int i = std::max(from, 0) + 1; to < 0 || i <= to; ++i) {
        if (static_cast<u64>(i) % p == 0 || support_.count(i)) continue;
        return schedule_.bound(i, p);
    }
    return kExactTail;
}

void CharSequence::require_tail(int upto, int threshold, const std::string& op) const {
    const int b = tail_min(0, upto);
    if (b < threshold)
        throw TailError(op + ": the tail schedule only guarantees v_p(c_i) >= " + std::to_string(b) +
                        " outside the support, need " + std::to_string(threshold));
}

// ---- CharacterEvaluator ------------------------------------------------------------------------

CharacterEvaluator::CharacterEvaluator(CharSequence seq) : seq_(std::move(seq)), dec_(seq_.context()) {}

PadicElement CharacterEvaluator::exponent_at(const Extension& ext, const PadicElement& lambda) const {
    PadicElement r(ext.big()->prime_context());
    for (const auto& [i, c] : seq_.support()) {
        if (c.is_zero()) continue;
        r += trace(ext.embed(c) * lambda.pow(static_cast<u64>(i)));
    }
    return r;
}

PadicElement CharacterEvaluator::irreducible(const OneUnitPoly& f) {
    const auto& ctx = seq_.context();
    seq_.require_tail(-1, ctx->precision(), "char_eval");
    const PadicElement lambda = dec_.lifted_root(f);
    const Extension& ext = *dec_.extension(f.degree()).ext;
    PadicElement value = PadicElement::one(ctx->prime_context());
    for (const auto& [i, c] : seq_.support()) {
        if (c.is_zero()) continue;
        PadicElement r = trace(ext.embed(c) * lambda.pow(static_cast<u64>(i)));
        value *= one_unit_exp(r.cast(ctx->prime_context()));
    }
    return value;
}

PadicElement CharacterEvaluator::eval(const OneUnitPoly& g) {
    PadicElement value = PadicElement::one(seq_.context()->prime_context());
    for (const auto& f : factor_one_unit(g)) value *= irreducible(f);
    return value;
}

PadicElement CharacterEvaluator::eval_by_pairing(const OneUnitPoly& g) {
    const auto& ctx = seq_.context();
    seq_.require_tail(-1, ctx->precision(), "char_eval");
    std::vector<int> I;
    for (const auto& [i, c] : seq_.support()) I.push_back(i);
    PadicElement r(ctx->prime_context());
    if (!I.empty()) {
        auto coords = dec_.general(g, I);
        for (const auto& [i, c] : seq_.support()) r += trace(c * coords.at(i));
    }
    return one_unit_exp(r);
}

// ---- sequence -> series -------------------------------------------------------------------------

namespace {

// Caps precision at what the unsupported tail of seq allows.
TruncatedSeries apply_schedule(const CharSequence& seq, TruncatedSeries s) {
    const int b = seq.tail_min(0, -1);
    if (b == kExactTail) return s;
    return s.reduce_precision(b + 1);
}

}  // namespace

TruncatedSeries f_map(const CharSequence& seq, int K) {
    const auto& ctx = seq.context();
    seq.require_tail(K, ctx->precision(), "f_map");
    const PadicElement L = log_one_plus_p(ctx);
    TruncatedSeries g = TruncatedSeries::one(ctx, K);
    for (const auto& [i, c] : seq.support()) {
        if (c.is_zero()) continue;
        g = g * monomial_exp(c * L, i, K);
    }
    return apply_schedule(seq, g);
}

PadicElement pi_ij(const CharSequence& seq, int i, int j) {
    PadicElement c = frobenius(seq.coefficient(i), j);
    return one_unit_exp(c) - PadicElement::one(seq.context());
}

TruncatedSeries o_pi(const CharSequence& seq, int K) {
    const auto& ctx = seq.context();
    seq.require_tail(K, ctx->precision(), "o_pi");
    const u64 p = ctx->prime();
    TruncatedSeries h = TruncatedSeries::one(ctx, K);
    u64 pj = 1;
    for (int j = 0; j < ctx->degree(); ++j, pj *= p) {
        for (const auto& [i, c] : seq.support()) {
            if (c.is_zero()) continue;
            const u64 m = static_cast<u64>(i) * pj;
            h = h * binomial_series(pi_ij(seq, i, j), static_cast<int>(std::min<u64>(m, static_cast<u64>(K) + 1)), K);
        }
    }
    return apply_schedule(seq, h);
}

// ---- series -> sequence -------------------------------------------------------------------------

TruncatedSeries psi_p(const TruncatedSeries& h) {
    if (!h.tail_known()) throw TailError("psi_p: the series tail is not certified");
    const auto& ctx = h.context();
    const u64 p = ctx->prime();
    const int K = h.K();
    TruncatedSeries r(ctx, K, h.var());
    for (int i = 1; i <= K; ++i) {
        if (static_cast<u64>(i) % p == 0) continue;
        PadicElement b(ctx);
        int j = 0;
        for (long long k = i; k <= K; k *= static_cast<long long>(p), ++j) b += frobenius(h[static_cast<int>(k)], -j);
        r.set(i, b);
    }
    r.set_tail(h.tail());
    // Terms a_{i p^j} with i p^j > K are only bounded by the tail.
    if (h.tail() != kExactTail) r = r.reduce_precision(h.tail());
    return r;
}

CharSequence g_map(const TruncatedSeries& h) {
    const auto& ctx = h.context();
    if (!h[0].equals_mod(PadicElement::one(ctx), h[0].precision()))
        throw InputError("g_map: constant term must be 1");
    if (h.min_valuation_nonconstant() < 1 || (h.tail_known() && h.tail() < 1))
        throw InputError("g_map: nonconstant coefficients must be divisible by p");
    const TruncatedSeries P = psi_p(h.log());
    const PadicElement L = log_one_plus_p(ctx);
    std::map<int, PadicElement> d;
    for (int i = 1; i <= P.K(); ++i) {
        if (static_cast<u64>(i) % ctx->prime() == 0) continue;
        d.emplace(i, P[i].divide(L));
    }
    TailSchedule sched = P.tail() == kExactTail ? TailSchedule::zero() : TailSchedule::constant(P.tail() - 1);
    return CharSequence(ctx, std::move(d), sched);
}

// ---- convergence --------------------------------------------------------------------------------

namespace {

struct Pt {
    double x, y;
};

double cross(const Pt& o, const Pt& a, const Pt& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

// Lower convex hull of points sorted by strictly increasing x.
std::vector<Pt> lower_hull(const std::vector<Pt>& pts) {
    std::vector<Pt> h;
    for (const auto& q : pts) {
        while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), q) <= 0) h.pop_back();
        h.push_back(q);
    }
    return h;
}

double terminal_slope(const std::vector<Pt>& pts, double fallback) {
    auto h = lower_hull(pts);
    if (h.size() < 2) return fallback;
    const auto& a = h[h.size() - 2];
    const auto& b = h.back();
    return (b.y - a.y) / (b.x - a.x);
}

}  // namespace

ConvergenceReport classify_convergence(const TruncatedSeries& h, int k_min, int k_max) {
    if (k_min < 1 || k_max < k_min || k_max > h.K())
        throw InputError("classify: window [" + std::to_string(k_min) + ", " + std::to_string(k_max) +
                         "] is empty or exceeds the cutoff " + std::to_string(h.K()));
    const auto& ctx = h.context();
    const double lp = std::log(static_cast<double>(ctx->prime()));
    ConvergenceReport rep;
    rep.k_min = k_min;
    rep.k_max = k_max;
    std::vector<Pt> lin, lg;
    double smin = std::numeric_limits<double>::infinity(), cmin = smin;
    for (int k = k_min; k <= k_max; ++k) {
        const PadicElement& a = h[k];
        if (a.is_zero()) {
            if (a.precision() < ctx->capacity()) rep.censored.push_back(k);
            continue;
        }
        const double v = a.valuation();
        rep.resolved.push_back(k);
        lin.push_back({static_cast<double>(k), v});
        smin = std::min(smin, v / k);
        if (k >= 2) {
            const double lk = std::log(static_cast<double>(k)) / lp;
            lg.push_back({lk, v});
            cmin = std::min(cmin, v / lk);
        }
    }
    if (rep.resolved.empty()) {
        rep.vacuous = true;
        rep.classification = "convergent";
        return rep;
    }
    rep.slope_window_min = smin;
    rep.log_constant_window_min = lg.empty() ? 0 : cmin;
    rep.slope_terminal = terminal_slope(lin, smin);
    rep.log_constant = lg.empty() ? 0 : terminal_slope(lg, cmin);
    // Overconvergence keeps v/k bounded below across the window; logarithmic
    // growth lets it decay. Compare the two halves of the window.
    const int mid = k_min + (k_max - k_min) / 2;
    double first = std::numeric_limits<double>::infinity(), second = first;
    for (const auto& pt : lin) {
        double& half = pt.x <= mid ? first : second;
        half = std::min(half, pt.y / pt.x);
    }
    bool linear_rate;
    if (std::isinf(first) || std::isinf(second))
        linear_rate = rep.slope_terminal > 0 && rep.slope_terminal >= 0.5 * rep.slope_window_min;
    else
        linear_rate = second >= 0.5 * first;
    if (linear_rate)
        rep.classification = "overconvergent";
    else if (rep.log_constant > 0)
        rep.classification = "log-convergent";
    else
        rep.classification = "convergent";
    return rep;
}

std::vector<long long> default_gC_u(int count) {
    std::vector<long long> u(count);
    for (int i = 1; i <= count; ++i) u[i - 1] = 1 + (__builtin_popcount(static_cast<unsigned>(i)) & 1);
    return u;
}

TruncatedSeries example_gC(const ContextPtr& ctx, long long c_num, long long c_den, std::vector<long long> u, int K) {
    if (c_num <= 0 || c_den <= 0) throw InputError("example_gC: C must be a positive rational");
    const u64 p = ctx->prime();
    const int N = ctx->precision();
    auto exponent = [&](int i) {
        return static_cast<int>((c_num * i + c_den - 1) / c_den) + 1;  // ceil(C i) + 1
    };
    TruncatedSeries g = TruncatedSeries::one(ctx, K);
    const auto defaults = default_gC_u(64);
    int i = 1;
    for (u64 pi = p;; pi *= p, ++i) {
        const u64 k = pi - 1;
        if (k > static_cast<u64>(K)) {
            g.set_tail(exponent(i));
            break;
        }
        const long long ui = i <= static_cast<int>(u.size()) ? u[i - 1] : defaults[i - 1];
        const int e = exponent(i);
        if (e >= N) {
            // Below the working precision: known to be 0 mod p^N only.
            g.set(static_cast<int>(k), PadicElement::from_int(ctx, 0).reduce_precision(N));
        } else {
            g.set(static_cast<int>(k), PadicElement::from_int(ctx, ui).mul_int(static_cast<long long>(ctx->power(e))));
        }
    }
    return g;
}

}  // namespace wittchar
