#include "wittchar/lfun.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <numeric>

#include "wittchar/errors.hpp"

namespace wittchar {

namespace {

void raw_pow(const Context& C, const u64* x, u64 e, u64* out) {
    const int n = C.degree();
    std::vector<u64> base(x, x + n), acc(n, 0), tmp(n);
    acc[0] = 1;
    while (e) {
        if (e & 1) {
            C.mul(acc.data(), base.data(), tmp.data());
            acc.swap(tmp);
        }
        e >>= 1;
        if (e) {
            C.mul(base.data(), base.data(), tmp.data());
            base.swap(tmp);
        }
    }
    std::copy(acc.begin(), acc.end(), out);
}

void check_base(const PointCache& cache, const ContextPtr& ctx) {
    if (!cache.base()->same_ring(*ctx)) throw InputError("lfun: point cache built over a different ring");
}

PointCache& cache_for(const LOptions& opt, const ContextPtr& ctx, std::unique_ptr<PointCache>& local) {
    if (opt.cache) {
        check_base(*opt.cache, ctx);
        return *opt.cache;
    }
    local = std::make_unique<PointCache>(ctx, opt.budget);
    return *local;
}

/// x * p^e with the precision gained from the shift.
PadicElement times_p_power(const PadicElement& x, long long e) {
    const auto& ctx = x.context();
    if (e >= ctx->capacity()) return PadicElement(ctx);
    if (e == 0) return x;
    const u64 m = ctx->modulus_value();
    const u64 f = ctx->power(static_cast<int>(e));
    std::vector<u64> c = x.coords();
    for (auto& v : c) v = mul_mod(v, f, m);
    return PadicElement::from_coords(ctx, std::move(c), std::min<long long>(x.precision() + e, ctx->capacity()));
}

/// f(p^step s), coefficient m scaled by p^(step m).
TruncatedSeries scale_variable(const TruncatedSeries& f, int step) {
    TruncatedSeries r = f;
    for (int m = 0; m <= f.K(); ++m) r.set(m, times_p_power(f[m], static_cast<long long>(step) * m));
    return r;
}

/// Per-orbit exponents sum_i Tr_{Z_{q^k}/Z_p}(c_i lambda_r^i) mod p^cap, and
/// the precision they are known to.
std::vector<u64> character_exponents(const CharSequence& seq, const PointTables& T, int& prec) {
    const auto& ctx = seq.context();
    const int a = ctx->degree();
    const u64 m = ctx->modulus_value();
    std::vector<u64> out(T.orbit_count(), 0);
    prec = ctx->capacity();
    for (const auto& [i, c] : seq.support()) {
        if (c.is_zero() && c.precision() >= ctx->capacity()) continue;
        prec = std::min(prec, c.precision());
        const auto& table = T.trace_table(i);
        const auto& cc = c.coords();
        for (size_t r = 0; r < out.size(); ++r) {
            u64 acc = out[r];
            for (int b = 0; b < a; ++b)
                if (cc[b]) acc = add_mod(acc, mul_mod(cc[b], table[r * a + b], m), m);
            out[r] = acc;
        }
    }
    return out;
}

PadicElement character_value(const ContextPtr& pctx, u64 exponent, int prec) {
    return one_unit_power(PadicElement::from_coords(pctx, {exponent}, prec));
}

void check_sequence(const CharSequence& seq, int D, const char* op, int min_degree = 0) {
    if (!seq.context()) throw InputError(std::string(op) + ": empty sequence");
    if (D < min_degree) throw InputError(std::string(op) + ": degree must be >= " + std::to_string(min_degree));
    seq.require_tail(-1, seq.context()->precision(), op);
}

/// q^k - 1 (+1 with include_zero), the power sums of the trivial character.
std::vector<PadicElement> trivial_power_sums(const ContextPtr& ctx, u64 q, int D, bool include_zero) {
    const u64 m = ctx->modulus_value();
    q %= m;
    std::vector<PadicElement> S(D + 1, PadicElement(ctx));
    for (int k = 1; k <= D; ++k) {
        u64 v = pow_mod(q, static_cast<u64>(k), m);
        if (!include_zero) v = sub_mod(v, 1 % m, m);
        S[k] = PadicElement::from_coords(ctx, {v}, ctx->capacity());
    }
    return S;
}

/// E <- E / (1 - chi s^e), in place.
void divide_euler_factor(std::vector<PadicElement>& E, const PadicElement& chi, int e) {
    const int D = static_cast<int>(E.size()) - 1;
    for (int n = e; n <= D; ++n) E[n] += chi * E[n - e];
}

LSeries make_lseries(const ContextPtr& ctx, std::vector<PadicElement> coeffs, int D, const char* provenance) {
    LSeries L{TruncatedSeries::from_coeffs(ctx, std::move(coeffs), D, "s"), provenance};
    L.series.set_tail(kUnknownTail);
    return L;
}

}  // namespace

// ---- point tables ---------------------------------------------------------------------

PointTables::PointTables(const ContextPtr& base, int k, u64 budget) : base_(base), k_(k) {
    if (k < 1) throw InputError("point tables: k must be >= 1");
    if (budget == 0) budget = kDefaultBudget;
    auto s = checked_pow(base->prime(), base->degree() * k);
    if (!s || *s > budget)
        throw BudgetExceeded("F_{q^" + std::to_string(k) + "} exceeds the enumeration budget of " +
                             std::to_string(budget));
    Q_ = *s;
    ext_ = make_extension_field(FiniteField::make(base), k);
    const Context& C = *ext_.ext->big();
    n_ = C.degree();

    const u64 q = base->residue_size();
    const u64 order = Q_ - 1;
    const std::vector<u64> omega = ext_.field->teichmuller(ext_.field->primitive_element()).coords();
    powers_.resize(order * static_cast<u64>(n_));
    std::vector<char> seen(order, 0);
    std::fill(powers_.begin(), powers_.begin() + n_, 0);
    powers_[0] = 1;
    for (u64 j = 0; j < order; ++j) {
        if (!seen[j]) {
            int e = 0;
            u64 t = j;
            do {
                seen[t] = 1;
                ++e;
                t = mul_mod(t, q % order, order);
            } while (t != j);
            sizes_.push_back(e);
            rep_exponent_.push_back(j);
        }
        if (j + 1 < order) C.mul(power_raw(j), omega.data(), powers_.data() + (j + 1) * n_);
    }

    const int a = base->degree();
    std::vector<u64> eb(a, 0), ub(n_), xt(n_), prod(n_);
    for (int b = 0; b < a; ++b) {
        std::fill(eb.begin(), eb.end(), 0);
        eb[b] = 1;
        ext_.ext->embed_raw(eb.data(), ub.data());
        std::vector<u64> functional(n_);
        for (int t = 0; t < n_; ++t) {
            std::fill(xt.begin(), xt.end(), 0);
            xt[t] = 1;
            C.mul(ub.data(), xt.data(), prod.data());
            functional[t] = C.trace(prod.data());
        }
        basis_functionals_.push_back(std::move(functional));
    }
}

PadicElement PointTables::representative(size_t r) const {
    const auto& big = ext_.ext->big();
    const u64* x = representative_raw(r);
    return PadicElement::from_coords(big, std::vector<u64>(x, x + n_), big->capacity());
}

const std::vector<u64>& PointTables::trace_table(int i) const {
    if (i < 1) throw InputError("trace table: exponent must be positive");
    auto it = traces_.find(i);
    if (it != traces_.end()) return it->second;
    const Context& C = *ext_.ext->big();
    const u64 m = C.modulus_value();
    const int a = base_->degree();
    std::vector<u64> table(orbit_count() * a);
    const u64 order = Q_ - 1;
    for (size_t r = 0; r < orbit_count(); ++r) {
        const u64* y = power_raw(mul_mod(rep_exponent_[r] % order, static_cast<u64>(i) % order, order));
        for (int b = 0; b < a; ++b) {
            const auto& L = basis_functionals_[b];
            u64 acc = 0;
            for (int t = 0; t < n_; ++t)
                if (y[t]) acc = add_mod(acc, mul_mod(y[t], L[t], m), m);
            table[r * a + b] = acc;
        }
    }
    return traces_.emplace(i, std::move(table)).first->second;
}

const PointTables& PointCache::tables(int k) {
    auto& slot = tables_[k];
    if (!slot) slot = std::make_unique<PointTables>(base_, k, budget_);
    return *slot;
}

// ---- power sums -----------------------------------------------------------------------

PadicElement power_sum(const CharSequence& seq, int k, const LOptions& opt) {
    check_sequence(seq, k, "power_sum", 1);
    const auto& ctx = seq.context();
    const auto pctx = ctx->prime_context();
    if (opt.trivial_shortcut && seq.is_zero()) return trivial_power_sums(pctx, ctx->residue_size(), k, opt.include_zero)[k];
    std::unique_ptr<PointCache> local;
    const PointTables& T = cache_for(opt, ctx, local).tables(k);
    int prec = 0;
    const auto exps = character_exponents(seq, T, prec);
    PadicElement S(pctx);
    for (size_t r = 0; r < exps.size(); ++r) S += character_value(pctx, exps[r], prec).mul_int(T.orbit_size(r));
    if (opt.include_zero) S += PadicElement::one(pctx);
    return S;
}

PadicElement power_sum(const TruncatedSeries& h, int k, const LOptions& opt) {
    const auto& ctx = h.context();
    if (k < 1) throw InputError("power_sum: k must be >= 1");
    if (!h.tail_known()) throw TailError("power_sum: the series tail is not certified");
    const int N = ctx->precision();
    if (h.tail() < N)
        throw TailError("power_sum: truncation at lambda^" + std::to_string(h.K()) + " certifies " +
                        std::to_string(h.tail()) + " digits, " + std::to_string(N) + " needed");
    if (opt.trivial_shortcut && h.is_one() && h.tail() == kExactTail)
        return trivial_power_sums(ctx, ctx->residue_size(), k, opt.include_zero)[k];

    const int target = std::min(ctx->capacity(), h.tail());
    const TruncatedSeries hh = h.truncate(h.cutoff_for(target));
    const int prec = std::min(target, hh.min_precision());

    std::unique_ptr<PointCache> local;
    const PointTables& T = cache_for(opt, ctx, local).tables(k);
    const Extension& E = *T.extension().ext;
    const Context& C = *E.big();
    const int n = C.degree();
    const int a = ctx->degree();
    const u64 m = C.modulus_value();

    // h(lambda) = sum_b e_b sum_m h_{m,b} lambda^m, with lambda^m read off the power table.
    std::vector<std::vector<u64>> basis(a, std::vector<u64>(n));
    for (int b = 0; b < a; ++b) {
        std::vector<u64> eb(a, 0);
        eb[b] = 1;
        E.embed_raw(eb.data(), basis[b].data());
    }
    const u64 order = T.field_size() - 1;
    std::vector<std::vector<u64>> part(a, std::vector<u64>(n));
    std::vector<u64> acc(n, 0), y(n), tmp(n), conj(n), prod(n);
    for (size_t r = 0; r < T.orbit_count(); ++r) {
        const u64 j = T.representative_exponent(r);
        for (auto& v : part) std::fill(v.begin(), v.end(), 0);
        for (int mm = 0; mm <= hh.K(); ++mm) {
            const auto& c = hh[mm].coords();
            const u64* pw = T.power_raw(mul_mod(j, static_cast<u64>(mm) % order, order));
            for (int b = 0; b < a; ++b) {
                if (!c[b]) continue;
                auto& v = part[b];
                for (int t = 0; t < n; ++t) v[t] = add_mod(v[t], mul_mod(c[b], pw[t], m), m);
            }
        }
        y = part[0];
        for (int b = 1; b < a; ++b) {
            C.mul(part[b].data(), basis[b].data(), tmp.data());
            for (int t = 0; t < n; ++t) y[t] = add_mod(y[t], tmp[t], m);
        }
        const int e = T.orbit_size(r);
        prod = y;
        for (int i = 1; i < e; ++i) {
            C.frobenius(y.data(), a * i, conj.data());
            C.mul(prod.data(), conj.data(), tmp.data());
            prod.swap(tmp);
        }
        raw_pow(C, prod.data(), static_cast<u64>(k / e), tmp.data());
        for (int t = 0; t < n; ++t) acc[t] = add_mod(acc[t], mul_mod(tmp[t], static_cast<u64>(e) % m, m), m);
    }
    PadicElement S = E.restrict(PadicElement::from_coords(E.big(), std::move(acc), prec));
    if (opt.include_zero) S += hh[0].pow(static_cast<u64>(k));
    return S;
}

// ---- L-functions ----------------------------------------------------------------------

TruncatedSeries exp_of_power_sums(const ContextPtr& ctx, const std::vector<PadicElement>& S) {
    const int D = static_cast<int>(S.size()) - 1;
    if (D < 0) throw InputError("exp_of_power_sums: no power sums");
    std::vector<PadicElement> e(D + 1, PadicElement(ctx));
    e[0] = PadicElement::one(ctx);
    for (int n = 1; n <= D; ++n) {
        PadicElement acc(ctx);
        for (int k = 1; k <= n; ++k) acc += S[k] * e[n - k];
        try {
            e[n] = acc.divide_int(n);
        } catch (const InputError&) {
            throw PrecisionError("exp of power sums: the coefficient of s^" + std::to_string(n) +
                                 " is not integral at the known precision");
        }
    }
    TruncatedSeries r = TruncatedSeries::from_coeffs(ctx, std::move(e), D, "s");
    r.set_tail(kUnknownTail);
    return r;
}

LSeries l_exp(const CharSequence& seq, int D, const LOptions& opt) {
    check_sequence(seq, D, "l_exp");
    const auto pctx = seq.context()->prime_context();
    std::vector<PadicElement> S;
    if (opt.trivial_shortcut && seq.is_zero()) {
        S = trivial_power_sums(pctx, seq.context()->residue_size(), D, opt.include_zero);
    } else {
        std::unique_ptr<PointCache> local;
        LOptions o = opt;
        o.cache = &cache_for(opt, seq.context(), local);
        S.assign(D + 1, PadicElement(pctx));
        for (int k = 1; k <= D; ++k) S[k] = power_sum(seq, k, o);
    }
    return LSeries{exp_of_power_sums(pctx, S), "exp"};
}

LSeries l_euler(const CharSequence& seq, int D, const LOptions& opt) {
    check_sequence(seq, D, "l_euler");
    const auto& ctx = seq.context();
    const auto pctx = ctx->prime_context();
    std::vector<PadicElement> E(D + 1, PadicElement(pctx));
    E[0] = PadicElement::one(pctx);

    if (opt.trivial_shortcut && seq.is_zero()) {
        // prod_d (1 - s^d)^(-M_d) with M_d the number of irreducibles of degree d.
        const u64 q = ctx->residue_size();
        const mpz_class mod(std::to_string(pctx->modulus_value()));
        for (int d = 1; d <= D; ++d) {
            u64 M = irreducible_count(q, d) + (d == 1 && opt.include_zero ? 1 : 0);
            std::vector<PadicElement> factor(D + 1, PadicElement(pctx));
            for (int j = 0; j * d <= D; ++j) {
                mpz_class b;
                mpz_bin_uiui(b.get_mpz_t(), M + j - 1, static_cast<unsigned long>(j));
                if (j == 0) b = 1;
                b %= mod;
                factor[j * d] = PadicElement::from_coords(pctx, {std::stoull(b.get_str())}, pctx->capacity());
            }
            std::vector<PadicElement> next(D + 1, PadicElement(pctx));
            for (int i = 0; i <= D; ++i)
                for (int j = 0; i + j <= D; j += d) next[i + j] += E[i] * factor[j];
            E = std::move(next);
        }
        return make_lseries(pctx, std::move(E), D, "euler");
    }

    std::unique_ptr<PointCache> local;
    PointCache& cache = cache_for(opt, ctx, local);
    for (int e = 1; e <= D; ++e) {
        const PointTables& T = cache.tables(e);
        int prec = 0;
        const auto exps = character_exponents(seq, T, prec);
        for (size_t r = 0; r < exps.size(); ++r)
            if (T.orbit_size(r) == e) divide_euler_factor(E, character_value(pctx, exps[r], prec), e);
    }
    if (opt.include_zero) divide_euler_factor(E, PadicElement::one(pctx), 1);
    return make_lseries(pctx, std::move(E), D, "euler");
}

LSeries l_euler_by_polynomials(const CharSequence& seq, int D, const LOptions& opt) {
    check_sequence(seq, D, "l_euler");
    const auto& ctx = seq.context();
    const auto pctx = ctx->prime_context();
    std::vector<PadicElement> E(D + 1, PadicElement(pctx));
    E[0] = PadicElement::one(pctx);
    CharacterEvaluator ev(seq);
    for (const auto& f : enumerate_irreducibles(ev.decomposer().field(), D, opt.budget))
        divide_euler_factor(E, ev.irreducible(f), f.degree());
    if (opt.include_zero) divide_euler_factor(E, PadicElement::one(pctx), 1);
    return make_lseries(pctx, std::move(E), D, "euler");
}

LSeries l_of_series(const TruncatedSeries& h, int D, const LOptions& opt) {
    if (D < 0) throw InputError("l_of_series: degree D must be >= 0");
    const auto& ctx = h.context();
    std::unique_ptr<PointCache> local;
    LOptions o = opt;
    if (!(opt.trivial_shortcut && h.is_one() && h.tail() == kExactTail)) o.cache = &cache_for(opt, ctx, local);
    std::vector<PadicElement> S(D + 1, PadicElement(ctx));
    for (int k = 1; k <= D; ++k) S[k] = power_sum(h, k, o);
    return LSeries{exp_of_power_sums(ctx, S), "series"};
}

// ---- characteristic series ---------------------------------------------------------------

int characteristic_kmax(int a, int N) {
    if (a < 1 || N < 0) throw InputError("characteristic_kmax: bad arguments");
    return (N + a - 1) / a;
}

LSeries characteristic_series(const LSeries& L, int a) {
    const auto& ctx = L.series.context();
    const int kmax = characteristic_kmax(a, ctx->precision());
    TruncatedSeries C = L.series;
    for (int k = 1; k <= kmax; ++k) C = C * scale_variable(L.series, a * k);
    C.set_var("s");
    C.set_tail(kUnknownTail);
    return LSeries{C, "characteristic"};
}

QuotientReport quotient_check(const LSeries& C, const LSeries& L, int a, int loss) {
    if (C.D() != L.D()) throw InputError("quotient_check: degree mismatch");
    const auto& ctx = C.series.context();
    QuotientReport rep;
    rep.required = ctx->precision() - loss;
    const TruncatedSeries R = L.series * scale_variable(C.series, a);
    rep.pass = true;
    for (int m = 0; m <= C.D(); ++m) {
        const int v = C.series[m].agreement(R[m]);
        rep.discrepancy.push_back(v);
        if (v < rep.required) rep.pass = false;
    }
    return rep;
}

// ---- Newton polygon ---------------------------------------------------------------------

NewtonPolygon newton_polygon(const TruncatedSeries& s) {
    NewtonPolygon np;
    const int cap = s.context()->capacity();
    for (int k = 0; k <= s.K(); ++k) {
        const PadicElement& c = s[k];
        if (c.resolved()) {
            np.points.push_back({k, c.valuation()});
        } else if (c.precision() < cap) {
            np.censored.push_back(k);
        }
    }
    auto cross = [](const NewtonPolygon::Vertex& o, const NewtonPolygon::Vertex& u, const NewtonPolygon::Vertex& w) {
        return static_cast<long long>(u.k - o.k) * (w.v - o.v) - static_cast<long long>(u.v - o.v) * (w.k - o.k);
    };
    for (const auto& pt : np.points) {
        while (np.vertices.size() >= 2 && cross(np.vertices[np.vertices.size() - 2], np.vertices.back(), pt) <= 0)
            np.vertices.pop_back();
        np.vertices.push_back(pt);
    }
    for (size_t i = 1; i < np.vertices.size(); ++i) {
        long long num = np.vertices[i].v - np.vertices[i - 1].v;
        long long den = np.vertices[i].k - np.vertices[i - 1].k;
        const long long g = std::gcd(num < 0 ? -num : num, den);
        np.slopes.push_back({num / g, den / g});
    }
    return np;
}

}  // namespace wittchar
