#include <random>

#include "doctest.h"
#include "wittchar/errors.hpp"
#include "wittchar/fp_poly.hpp"
#include "wittchar/padic.hpp"

using namespace wittchar;

namespace {

PadicElement random_element(const ContextPtr& ctx, std::mt19937_64& rng, int prec = -1) {
    const u64 m = ctx->power(prec < 0 ? ctx->precision() : prec);
    std::vector<u64> c(ctx->degree());
    for (auto& x : c) x = rng() % m;
    return PadicElement::from_coords(ctx, c, prec);
}

// Naive product in Z/m[x]/(x^2 + 1).
std::pair<u64, u64> gauss_mul(std::pair<u64, u64> a, std::pair<u64, u64> b, u64 m) {
    return {(a.first * b.first + m * m - a.second * b.second % m) % m, (a.first * b.second + a.second * b.first) % m};
}

}  // namespace

TEST_CASE("default modulus is the lexicographically smallest irreducible") {
    CHECK(fp::smallest_irreducible(3, 2) == fp::Poly{1, 0, 1});
    CHECK(fp::smallest_irreducible(5, 1) == fp::Poly{0, 1});
    // Brute force: scan tuples (c_0, ..., c_{n-1}) in order and test by
    // absence of roots (valid for n <= 3).
    for (u64 p : {3u, 5u, 7u})
        for (int n : {2, 3}) {
            fp::Poly expect;
            std::vector<u64> c(n, 0);
            for (u64 idx = 0; expect.empty(); ++idx) {
                u64 t = idx;
                for (int i = n - 1; i >= 0; --i) {
                    c[i] = t % p;
                    t /= p;
                }
                bool root = false;
                for (u64 x = 0; x < p && !root; ++x) {
                    u64 w = 0, xp = 1;
                    for (int i = 0; i < n; ++i) {
                        w = (w + c[i] * xp) % p;
                        xp = xp * x % p;
                    }
                    root = (w + xp) % p == 0;
                }
                if (!root) {
                    expect.assign(c.begin(), c.end());
                    expect.push_back(1);
                }
            }
            CHECK(fp::smallest_irreducible(p, n) == expect);
        }
}

TEST_CASE("context construction and errors") {
    CHECK_THROWS_AS(Context::make(2, 1, 4), InputError);
    CHECK_THROWS_AS(Context::make(9, 1, 4), InputError);
    CHECK_THROWS_AS(Context::make(3, 2, 4, {2, 0, 1}), InputError);  // x^2 + 2 = (x-1)(x+1) mod 3
    CHECK_THROWS_AS(Context::make(3, 1, 60), PrecisionError);
    auto ctx = Context::make(5, 1, 8);
    CHECK(ctx->capacity() == 11);
    CHECK(ctx->prime_context() == ctx);
    auto c9 = Context::make(3, 2, 8);
    CHECK(c9->modulus() == std::vector<u64>{1, 0, 1});
    CHECK(c9->prime_context()->degree() == 1);
    CHECK(c9->capacity() > 8);
}

TEST_CASE("ring axioms hold exactly") {
    std::mt19937_64 rng(11);
    for (auto [p, a] : {std::pair<u64, int>{3, 2}, {5, 3}, {7, 1}, {3, 4}}) {
        auto ctx = Context::make(p, a, 6);
        for (int t = 0; t < 30; ++t) {
            auto x = random_element(ctx, rng), y = random_element(ctx, rng), z = random_element(ctx, rng);
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            CHECK(x * y == y * x);
            CHECK(x + (-x) == PadicElement(ctx).reduce_precision(6));
            CHECK(x * PadicElement::one(ctx) == x);
        }
    }
}

TEST_CASE("precision propagation") {
    auto ctx = Context::make(5, 1, 6);
    auto x = PadicElement::from_int(ctx, 25).reduce_precision(6);  // v = 2, prec 6
    auto y = PadicElement::from_int(ctx, 3).reduce_precision(4);   // unit, prec 4
    CHECK((x * y).precision() == 6);  // min(6 + 0, 4 + 2)
    CHECK((x + y).precision() == 4);
    auto d = x.divide_by_p(2);
    CHECK(d.precision() == 4);
    CHECK(d.coords()[0] == 1);
    CHECK_THROWS_AS(y.divide_by_p(1), InputError);
    CHECK_THROWS_AS(PadicElement::from_int(ctx, 7).divide_int(35), InputError);
    auto q = PadicElement::from_int(ctx, 70).divide_int(35);
    CHECK(q.coords()[0] == 2);
    CHECK(q.precision() == ctx->capacity() - 1);
}

TEST_CASE("valuation is additive below the precision") {
    std::mt19937_64 rng(3);
    auto ctx = Context::make(3, 2, 8);
    for (int t = 0; t < 50; ++t) {
        auto x = random_element(ctx, rng).mul_int(3 * (rng() % 3 + 1));
        auto y = random_element(ctx, rng).mul_int(rng() % 2 ? 9 : 1);
        int vx = x.valuation(), vy = y.valuation();
        if (vx + vy < 8) CHECK((x * y).valuation() == vx + vy);
    }
}

TEST_CASE("frobenius on F_9 lifts the conjugate root") {
    auto ctx = Context::make(3, 2, 3, {}, 3);
    // Brute-force the roots of x^2 + 1 in Z/27[x]/(x^2 + 1).
    const u64 m = 27;
    std::vector<std::pair<u64, u64>> roots;
    for (u64 a0 = 0; a0 < m; ++a0)
        for (u64 a1 = 0; a1 < m; ++a1) {
            auto sq = gauss_mul({a0, a1}, {a0, a1}, m);
            if ((sq.first + 1) % m == 0 && sq.second == 0) roots.push_back({a0, a1});
        }
    REQUIRE(roots.size() == 2);
    // The root other than x reduces to x^3 = -x mod 3.
    std::pair<u64, u64> other = roots[0] == std::pair<u64, u64>{0, 1} ? roots[1] : roots[0];
    auto e = PadicElement::generator(ctx);
    auto s = frobenius(e);
    CHECK(s.coords() == std::vector<u64>{other.first, other.second});
    CHECK(trace(e).residue() == (roots[0].first + roots[1].first) % m);
}

TEST_CASE("frobenius is a ring automorphism of order a") {
    std::mt19937_64 rng(5);
    for (auto [p, a] : {std::pair<u64, int>{3, 2}, {3, 5}, {5, 3}, {7, 1}, {3, 12}}) {
        auto ctx = Context::make(p, a, 7);
        for (int t = 0; t < 10; ++t) {
            auto x = random_element(ctx, rng), y = random_element(ctx, rng);
            CHECK(frobenius(x * y) == frobenius(x) * frobenius(y));
            CHECK(frobenius(x + y) == frobenius(x) + frobenius(y));
            CHECK(frobenius(x, a) == x);
            CHECK(frobenius(frobenius(x, 2), -2) == x);
            CHECK(frobenius(x).equals_mod(x.pow(p), 1));
            CHECK(trace(frobenius(x)) == trace(x));
            CHECK(trace(x) == trace_by_matrix(x));
            CHECK(trace(x).valuation() >= x.valuation());
        }
        auto z = PadicElement::from_int(ctx, 17);
        CHECK(trace(z).residue() == static_cast<u64>(17 * a) % ctx->modulus_value());
        CHECK(trace(PadicElement(ctx)).is_zero());
        CHECK(gram_determinant_valuation(ctx) == 0);
    }
}

TEST_CASE("teichmuller lifts") {
    auto c5 = Context::make(5, 1, 3, {}, 3);
    CHECK(teichmuller(c5, {2}).coords()[0] == 57);  // fixed point of y -> y^5 mod 125
    CHECK(teichmuller(c5, {1}).coords()[0] == 1);
    CHECK(teichmuller(c5, {0}).is_zero());

    auto ctx = Context::make(3, 2, 8);
    const u64 q = 9;
    std::vector<std::vector<u64>> field;
    for (u64 i = 0; i < q; ++i) field.push_back({i % 3, i / 3});
    auto one = PadicElement::one(ctx);
    for (auto& u : field) {
        auto t = teichmuller(ctx, u);
        if (u != std::vector<u64>{0, 0}) CHECK(t.pow(q - 1) == one);
        CHECK(frobenius(t) == t.pow(3));
        for (auto& w : field) {
            // Residue-field product via the context itself at one digit.
            std::vector<u64> prod(2);
            ctx->mul(u.data(), w.data(), prod.data());
            for (auto& c : prod) c %= 3;
            CHECK(teichmuller(ctx, prod) == t * teichmuller(ctx, w));
        }
    }
}

TEST_CASE("logarithm") {
    auto c5 = Context::make(5, 1, 4, {}, 4);
    CHECK(padic_log(PadicElement::from_int(c5, 6)).coords()[0] % 625 == 555);
    CHECK(padic_log(PadicElement::one(c5)).is_zero());
    CHECK_THROWS_AS(padic_log(PadicElement::from_int(c5, 2)), InputError);

    auto ctx = Context::make(5, 2, 8);
    auto L = log_one_plus_p(ctx);
    CHECK(L.precision() >= 8);
    for (u64 m = 0; m < 12; ++m)
        CHECK(padic_log(one_unit_pow(ctx, m)).equals_mod(L.mul_int(static_cast<long long>(m)), 8));

    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        auto u = PadicElement::one(ctx) + random_element(ctx, rng).mul_int(5);
        auto v = PadicElement::one(ctx) + random_element(ctx, rng).mul_int(5);
        CHECK(padic_log(u * v).equals_mod(padic_log(u) + padic_log(v), 8));
        CHECK(padic_exp(padic_log(u)).equals_mod(u, 8));
    }
}

TEST_CASE("(1+p)-exponentials") {
    auto c5 = Context::make(5, 1, 4);
    CHECK(one_unit_exp(PadicElement(c5)) == PadicElement::one(c5).reduce_precision(one_unit_exp(PadicElement(c5)).precision()));
    CHECK(one_unit_exp(PadicElement::one(c5)).equals_mod(PadicElement::from_int(c5, 6), 4));
    CHECK(one_unit_exp(PadicElement::from_int(c5, 5)).coords()[0] % 625 == 276);  // 6^5 mod 625

    auto ctx = Context::make(3, 3, 8);
    auto zp = ctx->prime_context();
    std::mt19937_64 rng(9);
    for (int t = 0; t < 20; ++t) {
        u64 r = rng() % 100000;
        auto viaexp = one_unit_exp(PadicElement::from_int(zp, static_cast<long long>(r)));
        CHECK(viaexp.equals_mod(one_unit_pow(zp, r), 8));
        CHECK(one_unit_power(PadicElement::from_coords(zp, {r}, 8)).equals_mod(one_unit_pow(zp, r), 9));
        auto rr = random_element(zp, rng);
        CHECK(one_unit_log_solve(one_unit_exp(rr)).equals_mod(rr, 8));
        // A Z_q exponent still gives a 1-unit.
        CHECK(one_unit_exp(random_element(ctx, rng)).is_one_unit());
    }
    CHECK(one_unit_log_solve(PadicElement::one(zp)).is_zero());
    CHECK(one_unit_log_solve(PadicElement::from_int(zp, 4)).equals_mod(PadicElement::one(zp), 8));
    // u = 1 mod p^n forces r = 0 mod p^(n-1).
    for (int n = 1; n <= 5; ++n) {
        auto u = PadicElement::one(zp) + PadicElement::from_int(zp, 7).mul_int(static_cast<long long>(zp->power(n)));
        CHECK(one_unit_log_solve(u).valuation() >= n - 1);
    }
    CHECK_THROWS_AS(one_unit_log_solve(PadicElement::from_int(zp, 2)), InputError);
}

TEST_CASE("trace dual solve") {
    auto c1 = Context::make(5, 1, 4);
    auto r = PadicElement::from_int(c1, 17);
    CHECK(trace_dual_solve(c1, {r}).coords()[0] == 17);

    auto ctx = Context::make(3, 2, 3, {}, 3);
    auto zp = ctx->prime_context();
    CHECK(trace_dual_solve(ctx, {PadicElement(zp), PadicElement(zp)}).is_zero());
    // Gram matrix of (1, x) for x^2 + 1 is diag(2, -2); 1/2 = 14 mod 27.
    auto c = trace_dual_solve(ctx, {PadicElement::one(zp), PadicElement(zp)});
    CHECK(c.coords() == std::vector<u64>{14, 0});
    CHECK(trace(c).residue() == 1);
    CHECK(trace(c * PadicElement::generator(ctx)).residue() == 0);

    std::mt19937_64 rng(13);
    auto big = Context::make(5, 4, 6);
    auto zp5 = big->prime_context();
    for (int t = 0; t < 10; ++t) {
        std::vector<PadicElement> vals;
        for (int j = 0; j < 4; ++j) vals.push_back(random_element(zp5, rng));
        auto cc = trace_dual_solve(big, vals);
        auto e = PadicElement::one(big);
        for (int j = 0; j < 4; ++j) {
            CHECK(trace(cc * e).equals_mod(vals[j], 6));
            e *= PadicElement::generator(big);
        }
    }
}

TEST_CASE("unramified extensions") {
    std::mt19937_64 rng(17);
    for (auto [p, a, d] : {std::tuple<u64, int, int>{3, 2, 1}, {3, 2, 2}, {3, 2, 3}, {5, 1, 3}, {3, 1, 6}, {5, 2, 2}}) {
        auto base = Context::make(p, a, 6);
        auto ext = Extension::make(base, d);
        const auto& big = ext->big();
        CHECK(big->degree() == a * d);
        for (int t = 0; t < 10; ++t) {
            auto x = random_element(base, rng), y = random_element(base, rng);
            auto ex = ext->embed(x);
            CHECK(ext->embed(x * y) == ex * ext->embed(y));
            CHECK(ext->restrict(ex) == x);
            CHECK(frobenius(ex, a) == ex);
            CHECK(ext->embed(frobenius(x)) == frobenius(ex));
            CHECK(ext->trace_over(ex).equals_mod(x.mul_int(d), 6));
            auto z = random_element(big, rng);
            // Transitivity against the sum of all a*d conjugates.
            auto absolute = trace(ext->trace_over(z));
            CHECK(absolute.residue() == trace(z).residue());
            PadicElement direct(big);
            for (int j = 0; j < a * d; ++j) direct += frobenius(z, j);
            CHECK(direct.in_prime_field());
            CHECK(direct.coords()[0] == absolute.residue());
        }
        if (d > 1) {
            auto z = PadicElement::generator(big);
            CHECK_THROWS_AS(ext->restrict(z), InputError);
        }
    }
    auto base = Context::make(3, 2, 5);
    auto same = Extension::make(base, 1);
    auto x = random_element(base, rng);
    CHECK(same->trace_over(x) == x);
}
