#include <cmath>
#include <random>

#include "doctest.h"
#include "wittchar/character.hpp"

using namespace wittchar;

namespace {

PadicElement random_element(const ContextPtr& ctx, std::mt19937_64& rng, int min_val) {
    std::vector<u64> c(ctx->degree());
    const u64 m = ctx->power(ctx->precision());
    for (auto& x : c) x = rng() % m;
    return PadicElement::from_coords(ctx, c).mul_int(static_cast<long long>(ctx->power(min_val)));
}

CharSequence random_sequence(const ContextPtr& ctx, std::mt19937_64& rng, const std::vector<int>& support) {
    std::map<int, PadicElement> s;
    for (int i : support) s.emplace(i, random_element(ctx, rng, 1));
    return CharSequence(ctx, s);
}

OneUnitPoly random_one_unit(const FieldPtr& F, int deg, std::mt19937_64& rng) {
    FqPoly c(deg + 1);
    c[0] = F->one();
    for (int k = 1; k <= deg; ++k) c[k] = F->element(rng() % F->size());
    while (F->is_zero(c[deg])) c[deg] = F->element(rng() % F->size());
    return OneUnitPoly(F, c);
}

PadicElement lift_to(const ContextPtr& big, const PadicElement& x) {
    std::vector<u64> c(big->degree(), 0);
    c[0] = x.residue();
    return PadicElement::from_coords(big, c, x.precision());
}

}  // namespace

TEST_CASE("trivial character") {
    auto ctx = Context::make(3, 2, 5);
    CharSequence zero(ctx);
    CHECK(zero.is_zero());
    CharacterEvaluator chi(zero);
    std::mt19937_64 rng(51);
    for (int t = 0; t < 5; ++t) {
        auto g = random_one_unit(chi.decomposer().field(), 3, rng);
        CHECK(chi.eval(g) == PadicElement::one(ctx->prime_context()));
    }
    CHECK(f_map(zero, 10).is_one());
    CHECK(o_pi(zero, 10).is_one());
}

TEST_CASE("character of 1 - t is (1+p)^Tr(c_1)") {
    auto ctx = Context::make(5, 2, 5);
    std::mt19937_64 rng(53);
    auto c1 = random_element(ctx, rng, 0);
    CharacterEvaluator chi(CharSequence(ctx, {{1, c1}}));
    auto F = chi.decomposer().field();
    OneUnitPoly f(F, {F->one(), F->from_int(-1)});
    CHECK(chi.irreducible(f).equals_mod(one_unit_exp(trace(c1)), 5));
}

TEST_CASE("factor path equals coordinate pairing") {
    std::mt19937_64 rng(57);
    for (auto [p, a] : {std::pair<u64, int>{3, 1}, {3, 2}, {5, 1}}) {
        auto ctx = Context::make(p, a, 5);
        CharacterEvaluator chi(random_sequence(ctx, rng, {1, 2, 7}));
        auto F = chi.decomposer().field();
        for (int t = 0; t < 6; ++t) {
            auto g = random_one_unit(F, 1 + static_cast<int>(rng() % 4), rng);
            auto x = chi.eval(g), y = chi.eval_by_pairing(g);
            CHECK(x.is_one_unit());
            CHECK(x.equals_mod(y, 5));
        }
        auto g1 = random_one_unit(F, 2, rng), g2 = random_one_unit(F, 3, rng);
        CHECK(chi.eval(g1 * g2).equals_mod(chi.eval(g1) * chi.eval(g2), 5));
    }
}

TEST_CASE("tail schedules are enforced") {
    auto ctx = Context::make(3, 1, 6);
    std::mt19937_64 rng(59);
    CharSequence loose(ctx, {{1, random_element(ctx, rng, 1)}}, TailSchedule::linear(1, 2, 0));
    CHECK_THROWS_AS(f_map(loose, 10), TailError);
    CharacterEvaluator chi(loose);
    auto F = chi.decomposer().field();
    CHECK_THROWS_AS(chi.irreducible(OneUnitPoly(F, {F->one(), F->one()})), TailError);
    // A schedule above the precision for every index is accepted and caps precision.
    CharSequence tight(ctx, {{1, random_element(ctx, rng, 1)}}, TailSchedule::linear(1, 1, 6));
    auto g = f_map(tight, 10);
    CHECK(g.min_precision() <= 6 + 2 + 1);
    CHECK(g.tail() != kUnknownTail);
    CHECK_THROWS_AS(CharSequence(ctx, {{3, PadicElement::one(ctx)}}), InputError);
}

TEST_CASE("f_map and o_pi agree with binomial series") {
    std::mt19937_64 rng(61);
    auto ctx = Context::make(5, 1, 6);
    auto c1 = random_element(ctx, rng, 1);
    CharSequence one_term(ctx, {{1, c1}});
    auto g = f_map(one_term, 30);
    auto b = binomial_series(one_unit_exp(c1) - PadicElement::one(ctx), 1, 30);
    CHECK(g.agreement(b) >= 6);
    for (int k = 1; k <= 30; ++k) CHECK(g[k].valuation() >= 1);
    auto seq = random_sequence(ctx, rng, {1, 2, 7});
    CHECK(o_pi(seq, 30).agreement(f_map(seq, 30)) >= 6);
    // Two-term sequences factor.
    CharSequence s1(ctx, {{1, seq.coefficient(1)}}), s2(ctx, {{2, seq.coefficient(2)}});
    CharSequence s12(ctx, {{1, seq.coefficient(1)}, {2, seq.coefficient(2)}});
    CHECK(f_map(s12, 30).agreement(f_map(s1, 30) * f_map(s2, 30)) >= 6);
}

TEST_CASE("o_pi is the product of Frobenius-twisted layers") {
    std::mt19937_64 rng(67);
    auto ctx = Context::make(3, 2, 6);
    auto seq = random_sequence(ctx, rng, {1, 2});
    const int K = 40;
    auto g = f_map(seq, K);
    auto layered = g * g.frobenius(1).substitute_power(3);
    CHECK(o_pi(seq, K).agreement(layered) >= 6);
}

TEST_CASE("character values equal products of O_pi at conjugate roots") {
    std::mt19937_64 rng(71);
    for (auto [p, a, D] : {std::tuple<u64, int, int>{3, 1, 3}, {3, 2, 2}}) {
        auto ctx = Context::make(p, a, 5);
        auto seq = random_sequence(ctx, rng, {1, 2, 7});
        CharacterEvaluator chi(seq);
        auto O = o_pi(seq, 60);
        REQUIRE(O.tail() >= 5);
        const u64 q = ctx->residue_size();
        for (const auto& f : enumerate_irreducibles(chi.decomposer().field(), D)) {
            const auto& E = chi.decomposer().extension(f.degree());
            auto lam = chi.decomposer().lifted_root(f);
            auto Ob = embed(*E.ext, O);
            PadicElement prod = PadicElement::one(E.ext->big());
            PadicElement conj = lam;
            for (int j = 0; j < f.degree(); ++j, conj = conj.pow(q)) prod *= Ob.evaluate(conj);
            CHECK(prod.equals_mod(lift_to(E.ext->big(), chi.irreducible(f)), 5));
        }
    }
}

TEST_CASE("psi_p") {
    auto ctx = Context::make(5, 1, 4);
    auto h = TruncatedSeries::from_coeffs(
        ctx, {PadicElement(ctx), PadicElement::one(ctx), PadicElement(ctx), PadicElement(ctx), PadicElement(ctx),
              PadicElement::from_int(ctx, 3), PadicElement::one(ctx)},
        6);
    auto r = psi_p(h);
    CHECK(r[1] == PadicElement::from_int(ctx, 4));
    CHECK(r[6] == PadicElement::one(ctx));
    CHECK(r[5].is_zero());
    CHECK(psi_p(TruncatedSeries::from_coeffs(ctx, {PadicElement(ctx), PadicElement::one(ctx)}, 3))[1] ==
          PadicElement::one(ctx));

    // q = 9: b_1 picks up sigma^{-1}(a_3).
    auto c9 = Context::make(3, 2, 4);
    auto x = PadicElement::generator(c9);
    TruncatedSeries s(c9, 9);
    s.set(3, x);
    auto b = psi_p(s);
    CHECK(b[1] == frobenius(x, -1));
    CHECK(b[1] == frobenius(x, 1));
    CHECK(b[3].is_zero());
}

TEST_CASE("psi_p preserves traces at Teichmueller points") {
    std::mt19937_64 rng(73);
    for (auto [p, a] : {std::pair<u64, int>{3, 1}, {3, 2}}) {
        auto ctx = Context::make(p, a, 6);
        Decomposer dec(ctx);
        for (int t = 0; t < 10; ++t) {
            TruncatedSeries c(ctx, 30);
            for (int k = 1; k <= 30; ++k) c.set(k, random_element(ctx, rng, 0));
            auto pc = psi_p(c);
            const int d = 1 + static_cast<int>(rng() % 3);
            const auto& E = dec.extension(d);
            auto lam_bar = E.field->element(1 + rng() % (E.field->size() - 1));
            auto lam = E.field->teichmuller(lam_bar);
            auto lhs = trace(embed(*E.ext, c).evaluate(lam));
            auto rhs = trace(embed(*E.ext, pc).evaluate(lam));
            CHECK(lhs.equals_mod(rhs, 6));
        }
    }
}

TEST_CASE("G o F is the identity") {
    std::mt19937_64 rng(79);
    for (auto [p, a] : {std::pair<u64, int>{5, 1}, {3, 2}}) {
        auto ctx = Context::make(p, a, 8);
        for (int t = 0; t < 5; ++t) {
            std::vector<int> support;
            for (int i = 1; i <= 20; ++i)
                if (i % static_cast<int>(p) && rng() % 3 == 0) support.push_back(i);
            auto seq = random_sequence(ctx, rng, support);
            auto back = g_map(f_map(seq, 60));
            for (const auto& [i, d] : back.support()) {
                CHECK(d.precision() >= 6);
                CHECK(d.equals_mod(seq.coefficient(i), 6));
            }
        }
    }
    auto ctx = Context::make(5, 1, 6);
    auto trivial = g_map(TruncatedSeries::one(ctx, 10));
    CHECK(trivial.support().size() == 8);
    for (const auto& [i, d] : trivial.support()) CHECK(d.is_zero());
    auto bad = TruncatedSeries::from_coeffs(ctx, {PadicElement::one(ctx), PadicElement::one(ctx)}, 5);
    CHECK_THROWS_AS(g_map(bad), InputError);
}

TEST_CASE("example g_C") {
    auto ctx = Context::make(5, 1, 8);
    auto g = example_gC(ctx, 1, 1, std::vector<long long>(4, 1), 30);
    for (int k = 1; k <= 30; ++k) {
        if (k == 4)
            CHECK(g[k].valuation() == 2);
        else if (k == 24)
            CHECK(g[k].valuation() == 3);
        else
            CHECK(g[k].is_zero());
    }
    CHECK(g.tail() == 4);
    CHECK(example_gC(ctx, 2, 1, {}, 3).is_one());
    auto u = default_gC_u(8);
    CHECK(u == std::vector<long long>{2, 2, 1, 2, 1, 1, 2, 2});
    auto d = g_map(example_gC(ctx, 1, 1, {}, 30));
    CHECK(d.support().size() == 24);
}

TEST_CASE("convergence classification") {
    auto c5 = Context::make(5, 1, 20);
    auto b = binomial_series(PadicElement::from_int(c5, 5), 1, 50);
    auto rb = classify_convergence(b, 1, 50);
    CHECK(rb.slope_window_min >= 0.75);
    CHECK(rb.classification == "overconvergent");

    auto one = classify_convergence(TruncatedSeries::one(c5, 10), 1, 10);
    CHECK(one.vacuous);
    CHECK(one.classification == "convergent");
    CHECK_THROWS_AS(classify_convergence(b, 5, 60), InputError);

    auto ctx = Context::make(5, 1, 12);
    auto g = example_gC(ctx, 2, 1, {}, 624);
    auto rg = classify_convergence(g, 1, 624);
    CHECK(rg.classification == "log-convergent");
    CHECK(rg.log_constant >= 1.8);
    CHECK(rg.log_constant <= 2.2);
    CHECK(rg.resolved == std::vector<int>{4, 24, 124, 624});
    auto rl = classify_convergence(g.log(), 1, 624);
    CHECK(rl.log_constant >= 1.8);
    CHECK(rl.log_constant <= 2.2);
}
