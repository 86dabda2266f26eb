#include <random>

#include "doctest.h"
#include "wittchar/lfun.hpp"

using namespace wittchar;

namespace {

CharSequence random_sequence(const ContextPtr& ctx, std::mt19937_64& rng, const std::vector<int>& support) {
    std::map<int, PadicElement> s;
    const u64 m = ctx->power(ctx->precision());
    for (int i : support) {
        std::vector<u64> c(ctx->degree());
        for (auto& x : c) x = rng() % m;
        s.emplace(i, PadicElement::from_coords(ctx, c));
    }
    return CharSequence(ctx, s);
}

/// (1 - s) / (1 - q s) = 1 + sum_{n >= 1} (q - 1) q^(n-1) s^n, to N digits.
bool is_trivial_l(const TruncatedSeries& L, long long q) {
    long long c = 1;
    const int N = L.context()->precision();
    for (int n = 0; n <= L.K(); ++n) {
        if (L[n].agreement(PadicElement::from_int(L.context(), c)) < N) return false;
        c = n == 0 ? q - 1 : c * q;
    }
    return true;
}

}  // namespace

TEST_CASE("zero sequence gives (1-s)/(1-qs)") {
    for (auto [p, a] : {std::pair{3, 1}, std::pair{5, 1}, std::pair{3, 2}}) {
        auto ctx = Context::make(p, a, 6);
        const long long q = static_cast<long long>(ctx->residue_size());
        CharSequence zero(ctx);
        CHECK(is_trivial_l(l_euler(zero, 5).series, q));
        CHECK(is_trivial_l(l_exp(zero, 5).series, q));
        LOptions enumerate;
        enumerate.trivial_shortcut = false;
        CHECK(is_trivial_l(l_euler(zero, 4, enumerate).series, q));
        CHECK(is_trivial_l(l_exp(zero, 4, enumerate).series, q));
        CHECK(is_trivial_l(l_of_series(TruncatedSeries::one(ctx, 5), 4, enumerate).series, q));
    }
}

TEST_CASE("including zero removes the factor 1 - s") {
    auto ctx = Context::make(3, 1, 6);
    LOptions opt;
    opt.include_zero = true;
    for (bool shortcut : {true, false}) {
        opt.trivial_shortcut = shortcut;
        auto L = l_exp(CharSequence(ctx), 5, opt).series;
        for (int n = 0; n <= 5; ++n) CHECK(L[n].agreement(PadicElement::from_int(ctx, static_cast<long long>(ctx->power(n)))) >= 6);
    }
}

TEST_CASE("point tables cover the multiplicative group") {
    auto ctx = Context::make(3, 2, 4);
    for (int k = 1; k <= 3; ++k) {
        PointTables T(ctx, k, 0);
        u64 total = 0;
        for (size_t r = 0; r < T.orbit_count(); ++r) {
            CHECK(k % T.orbit_size(r) == 0);
            total += static_cast<u64>(T.orbit_size(r));
            auto lam = T.representative(r);
            CHECK(lam.pow(T.field_size() - 1) == PadicElement::one(lam.context()));
        }
        CHECK(total == T.field_size() - 1);
    }
    CHECK_THROWS_AS(PointTables(ctx, 4, 1000), BudgetExceeded);
}

TEST_CASE("Euler product, power sums and polynomial sieve agree") {
    std::mt19937_64 rng(71);
    for (auto [p, a, D] : {std::tuple{3, 1, 5}, std::tuple{5, 1, 4}, std::tuple{3, 2, 3}}) {
        auto ctx = Context::make(p, a, 6);
        PointCache cache(ctx);
        LOptions opt;
        opt.cache = &cache;
        for (int t = 0; t < 3; ++t) {
            auto seq = random_sequence(ctx, rng, {1, 2, 7});
            auto Le = l_euler(seq, D, opt).series;
            auto Lx = l_exp(seq, D, opt).series;
            auto Lp = l_euler_by_polynomials(seq, D, opt).series;
            CHECK(Le.agreement(Lx) >= 5);
            CHECK(Le.agreement(Lp) >= 5);
            CHECK(Le[0] == PadicElement::one(ctx->prime_context()));
        }
    }
}

TEST_CASE("L of O_pi equals the character L-function") {
    std::mt19937_64 rng(73);
    for (auto [p, a, D] : {std::tuple{3, 1, 4}, std::tuple{3, 2, 3}}) {
        auto ctx = Context::make(p, a, 6);
        PointCache cache(ctx);
        LOptions opt;
        opt.cache = &cache;
        auto seq = random_sequence(ctx, rng, {1, 2});
        auto h = o_pi(seq, 80);
        auto Ls = l_of_series(h, D, opt).series;
        auto Le = l_euler(seq, D, opt).series;
        for (int n = 0; n <= D; ++n) {
            REQUIRE(Ls[n].in_prime_field());
            auto down = PadicElement::from_coords(ctx->prime_context(), {Ls[n].residue()}, Ls[n].precision());
            CHECK(down.agreement(Le[n]) >= 5);
        }
    }
}

TEST_CASE("series L-function needs a certified tail") {
    auto ctx = Context::make(3, 1, 6);
    auto h = TruncatedSeries::one(ctx, 5);
    h.set_tail(kUnknownTail);
    CHECK_THROWS_AS(l_of_series(h, 3), TailError);
    h.set_tail(3);
    CHECK_THROWS_AS(l_of_series(h, 3), TailError);
}

TEST_CASE("characteristic series satisfies C(s) = L(s) C(qs)") {
    std::mt19937_64 rng(79);
    for (auto [p, a] : {std::pair{3, 1}, std::pair{3, 2}}) {
        auto ctx = Context::make(p, a, 6);
        auto L = l_euler(random_sequence(ctx, rng, {1, 2}), 4);
        auto C = characteristic_series(L, a);
        CHECK(characteristic_kmax(a, 6) == (6 + a - 1) / a);
        auto rep = quotient_check(C, L, a, 1);
        CHECK(rep.pass);
        CHECK(rep.discrepancy.size() == 5);
        // A wrong L is caught.
        auto bad = L;
        bad.series.set(1, bad.series[1] + PadicElement::one(bad.series.context()));
        CHECK_FALSE(quotient_check(C, bad, a, 1).pass);
    }
}

TEST_CASE("Newton polygon") {
    auto ctx = Context::make(3, 1, 6);
    auto s = TruncatedSeries::from_coeffs(
        ctx, {PadicElement::from_int(ctx, 1), PadicElement::from_int(ctx, 27), PadicElement::from_int(ctx, 3),
              PadicElement::from_int(ctx, 81 * 2)},
        3, "s");
    auto np = newton_polygon(s);
    REQUIRE(np.vertices.size() == 3);
    CHECK(np.vertices[1].k == 2);
    CHECK(np.vertices[1].v == 1);
    REQUIRE(np.slopes.size() == 2);
    CHECK(np.slopes[0].num == 1);
    CHECK(np.slopes[0].den == 2);
    CHECK(np.slopes[1].value() == doctest::Approx(3.0));
    CHECK(np.censored.empty());

    auto t = s;
    t.set(3, PadicElement(ctx).reduce_precision(4));
    auto nt = newton_polygon(t);
    CHECK(nt.censored == std::vector<int>{3});
}
