#include "wittchar/witt.hpp"

#include <algorithm>

namespace wittchar {

namespace {

void check_compatible(const FiniteField& F, const FiniteField& G) {
    if (F.prime() != G.prime() || F.degree() != G.degree())
        throw InputError("polynomial lives over a different residue field");
    const auto& a = F.context()->modulus();
    const auto& b = G.context()->modulus();
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] % F.prime() != b[i] % F.prime()) throw InputError("polynomial lives over a different residue field");
}

// Re-homes the coefficients of f in the field F (same coordinates).
OneUnitPoly rehome(const FieldPtr& F, const OneUnitPoly& f) {
    if (f.field() == F) return f;
    check_compatible(*F, *f.field());
    return OneUnitPoly(F, f.coeffs());
}

}  // namespace

std::vector<int> prime_to_p_indices(u64 p, int n) {
    std::vector<int> out;
    for (int i = 1; i <= n; ++i)
        if (static_cast<u64>(i) % p) out.push_back(i);
    return out;
}

Decomposer::Decomposer(ContextPtr ctx) : ctx_(std::move(ctx)), field_(FiniteField::make(ctx_)) {}

const ExtensionField& Decomposer::extension(int d) {
    auto it = ext_.find(d);
    if (it == ext_.end()) it = ext_.emplace(d, make_extension_field(field_, d)).first;
    return it->second;
}

PadicElement Decomposer::lifted_root(const OneUnitPoly& f) {
    OneUnitPoly g = rehome(field_, f);
    const ExtensionField& E = extension(g.degree());
    return E.field->teichmuller(reciprocal_root_in(g, E));
}

Coordinates Decomposer::polynomial(const OneUnitPoly& f, const std::vector<int>& I) {
    const PadicElement lambda = lifted_root(f);
    const ExtensionField& E = extension(f.degree());
    Coordinates out;
    for (int i : I) {
        if (i < 1) throw InputError("coordinate indices must be positive");
        PadicElement li = lambda.pow(static_cast<u64>(i));
        out.emplace(i, f.degree() == 1 ? li : E.ext->trace_over(li));
    }
    return out;
}

Coordinates Decomposer::polynomial_by_conjugates(const OneUnitPoly& f, const std::vector<int>& I) {
    const PadicElement lambda = lifted_root(f);
    const ExtensionField& E = extension(f.degree());
    const u64 q = field_->size();
    std::vector<PadicElement> conj{lambda};
    for (int j = 1; j < f.degree(); ++j) conj.push_back(conj.back().pow(q));
    Coordinates out;
    for (int i : I) {
        PadicElement s(lambda.context());
        for (const auto& c : conj) s += c.pow(static_cast<u64>(i));
        out.emplace(i, E.ext->restrict(s));
    }
    return out;
}

Coordinates Decomposer::general(const OneUnitPoly& g, const std::vector<int>& I) {
    Coordinates out;
    for (int i : I) out.emplace(i, PadicElement(ctx_));
    for (const auto& f : factor_one_unit(rehome(field_, g))) {
        for (auto& [i, c] : polynomial(f, I)) out.at(i) += c;
    }
    return out;
}

std::map<int, SpineCoordinate> ghost_spine_coordinates(const ContextPtr& ctx, const OneUnitPoly& g,
                                                       const std::vector<int>& I) {
    if (I.empty()) return {};
    const u64 p = ctx->prime();
    const int N = ctx->precision();
    FieldPtr F = FiniteField::make(ctx);
    const OneUnitPoly h = rehome(F, g);
    const int imax = *std::max_element(I.begin(), I.end());
    auto span = checked_pow(p, N - 1);
    if (!span || *span > static_cast<u64>(kDefaultBudget / imax)) throw BudgetExceeded("ghost spine: Witt length too large");
    const int n = imax * static_cast<int>(*span);

    auto x = E_inverse(FqRing{F}, h.coeffs(), n);
    std::vector<PadicElement> lifted;
    lifted.reserve(n);
    for (const auto& r : x.components()) lifted.push_back(F->teichmuller(r));
    const auto w = ghost(BigWittVector<PadicRing>(PadicRing{ctx}, std::move(lifted)));

    std::map<int, SpineCoordinate> out;
    for (int i : I) {
        std::vector<PadicElement> y;
        SpineCoordinate sc{PadicElement(ctx), {}};
        u64 pk = 1;
        for (int k = 0; k < N; ++k, pk *= p) {
            PadicElement acc = w[static_cast<u64>(i) * pk - 1];
            u64 pj = 1;
            for (int j = 0; j < k; ++j, pj *= p)
                acc -= y[j].pow(pk / pj).mul_int(static_cast<long long>(pj));
            y.push_back(acc.divide_by_p(k));
            FqElement yk = F->reduce(y.back());
            sc.typical.push_back(yk);
            sc.value += frobenius(F->teichmuller(yk), -k).mul_int(static_cast<long long>(pk));
        }
        out.emplace(i, std::move(sc));
    }
    return out;
}

}  // namespace wittchar
