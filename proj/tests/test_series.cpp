#include <random>

#include "doctest.h"
#include "wittchar/errors.hpp"
#include "wittchar/series.hpp"

using namespace wittchar;

namespace {

TruncatedSeries random_one_unit_series(const ContextPtr& ctx, int K, std::mt19937_64& rng) {
    TruncatedSeries s = TruncatedSeries::one(ctx, K);
    const u64 m = ctx->power(ctx->precision());
    for (int k = 1; k <= K; ++k) {
        std::vector<u64> c(ctx->degree());
        for (auto& x : c) x = (rng() % m) * ctx->prime() % m;
        s.set(k, PadicElement::from_coords(ctx, c));
    }
    return s;
}

}  // namespace

TEST_CASE("binomial series matches frozen coefficients") {
    // p = 5, pi = 5, K = 10, mod 5^6; computed from the Stirling expansion
    // sum_j s(j, k) pi^j / j! over exact rationals.
    auto ctx = Context::make(5, 1, 6);
    auto b = binomial_series(PadicElement::from_int(ctx, 5), 1, 10);
    const std::vector<u64> expect{1, 1805, 11825, 125, 5625, 15000, 12500, 0, 0, 0, 0};
    for (int k = 0; k <= 10; ++k) {
        CHECK(b[k].precision() >= 6);
        CHECK(b[k].coords()[0] % 15625 == expect[k]);
    }
}

TEST_CASE("binomial series equals exp(X Log(1 + pi))") {
    std::mt19937_64 rng(21);
    for (auto [p, a] : {std::pair<u64, int>{3, 2}, {5, 1}, {7, 2}}) {
        auto ctx = Context::make(p, a, 8);
        for (int t = 0; t < 5; ++t) {
            std::vector<u64> c(a);
            for (auto& x : c) x = rng() % ctx->power(7);
            auto pi = PadicElement::from_coords(ctx, c).mul_int(static_cast<long long>(p));
            auto b = binomial_series(pi, 1, 30);
            auto L = padic_log(PadicElement::one(ctx) + pi);
            PadicElement term = PadicElement::one(ctx);
            for (int k = 0; k <= 30; ++k) {
                if (k > 0) term = (term * L).divide_int(k);
                CHECK(b[k].equals_mod(term, 8));
            }
            // Substitution places the same coefficients at multiples of m.
            auto b3 = binomial_series(pi, 3, 30);
            for (int k = 0; k <= 30; ++k) CHECK((k % 3 ? b3[k].is_zero() : b3[k] == b[k / 3]));
        }
    }
}

TEST_CASE("binomial series edge cases and valuation floor") {
    auto ctx = Context::make(5, 1, 8);
    auto one = binomial_series(PadicElement(ctx), 2, 20);
    CHECK(one.is_one());
    CHECK(one.tail() == kExactTail);
    CHECK_THROWS_AS(binomial_series(PadicElement::from_int(ctx, 2), 1, 5), InputError);

    auto pi = PadicElement::from_int(ctx, 5);
    auto b = binomial_series(pi, 1, 50);
    CHECK(b[0] == PadicElement::one(ctx).reduce_precision(b[0].precision()));
    CHECK(b[1].equals_mod(pi, 2));
    for (int k = 1; k <= 50; ++k) {
        int floor = (3 * k + 3) / 4;  // ceil(0.75 k)
        CHECK(b[k].valuation() >= std::min(floor, b[k].precision()));
    }
    CHECK(b.tail() >= (3 * 51 + 3) / 4);
}

TEST_CASE("series log, exp and inverse") {
    std::mt19937_64 rng(23);
    auto ctx = Context::make(3, 2, 8);
    for (int t = 0; t < 5; ++t) {
        auto f = random_one_unit_series(ctx, 20, rng);
        auto g = random_one_unit_series(ctx, 20, rng);
        auto lf = f.log();
        CHECK(lf.exp().agreement(f) >= 8);
        CHECK((f * g).log().agreement(lf + g.log()) >= 8);
        CHECK((f * f.inverse()).agreement(TruncatedSeries::one(ctx, 20)) >= 8);
    }
    CHECK_THROWS_AS(TruncatedSeries::one(ctx, 3).exp(), InputError);
}

TEST_CASE("tail certificates") {
    auto ctx = Context::make(5, 1, 6);
    auto x = TruncatedSeries::from_coeffs(ctx, {PadicElement::one(ctx), PadicElement::from_int(ctx, 5)}, 4);
    CHECK(x.tail() == kExactTail);
    auto x5 = x * x * x * x * x;  // degree 5 exceeds the cutoff 4
    CHECK(x5.tail() == 5);         // coefficient of the omitted lambda^5 is 5^5
    auto sub = x.substitute_power(5);
    CHECK(sub.tail() == 1);
    CHECK(sub.is_one());  // 1 + 5 lambda^5 is 1 below the cutoff
    CHECK(sub[0] == PadicElement::one(ctx));
    auto e = monomial_exp(PadicElement::from_int(ctx, 5), 2, 6);
    CHECK(e.tail() == 4 * 1 - 0);  // first omitted term 5^4 / 4! at lambda^8
    auto ev = e.evaluate(PadicElement::one(ctx));
    CHECK(ev.precision() <= 4);
    TruncatedSeries unknown = e;
    unknown.set_tail(kUnknownTail);
    CHECK_THROWS_AS(unknown.evaluate(PadicElement::one(ctx)), TailError);
}
