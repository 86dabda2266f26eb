#include <random>

#include "doctest.h"
#include "wittchar/witt.hpp"

using namespace wittchar;

namespace {

using IntWitt = BigWittVector<IntegerRing>;

IntWitt random_int_witt(std::mt19937_64& rng, int n, int bound) {
    std::vector<mpz_class> r(n);
    for (auto& x : r) x = static_cast<long>(rng() % (2 * bound + 1)) - bound;
    return IntWitt(IntegerRing{}, std::move(r));
}

OneUnitPoly random_one_unit(const FieldPtr& F, int deg, std::mt19937_64& rng) {
    FqPoly c(deg + 1);
    c[0] = F->one();
    for (int k = 1; k <= deg; ++k) c[k] = F->element(rng() % F->size());
    while (F->is_zero(c[deg])) c[deg] = F->element(rng() % F->size());
    return OneUnitPoly(F, c);
}

}  // namespace

TEST_CASE("ghost map on small vectors") {
    IntegerRing Z;
    IntWitt x(Z, {1, 1});
    auto w = ghost(x);
    CHECK(w == std::vector<mpz_class>{1, 3});
    CHECK(ghost_inverse(Z, w) == x);
    auto t = IntWitt::teichmuller(Z, 3, 5);
    CHECK(ghost(t) == std::vector<mpz_class>{3, 9, 27, 81, 243});
    CHECK_THROWS_WITH_AS(ghost_inverse(Z, {1, 2}), "not a ghost vector at 2", InputError);
}

TEST_CASE("Witt ring structure over the integers") {
    std::mt19937_64 rng(31);
    IntegerRing Z;
    for (int t = 0; t < 30; ++t) {
        auto x = random_int_witt(rng, 12, 4), y = random_int_witt(rng, 12, 4);
        auto s = witt_add(x, y), m = witt_mul(x, y);
        auto gx = ghost(x), gy = ghost(y), gs = ghost(s), gm = ghost(m);
        for (int i = 0; i < 12; ++i) {
            CHECK(gs[i] == gx[i] + gy[i]);
            CHECK(gm[i] == gx[i] * gy[i]);
        }
        CHECK(ghost_inverse(Z, gx) == x);
        CHECK(E_inverse(Z, E_map(x), 12) == x);
        // E turns Witt addition into series multiplication.
        auto ex = E_map(x), ey = E_map(y), es = E_map(s);
        for (int k = 0; k <= 12; ++k) {
            mpz_class c = 0;
            for (int j = 0; j <= k; ++j) c += ex[j] * ey[k - j];
            CHECK(es[k] == c);
        }
        CHECK(witt_add(x, IntWitt::zero(Z, 12)) == x);
    }
    auto a = IntWitt::teichmuller(Z, 3, 8), b = IntWitt::teichmuller(Z, -2, 8);
    CHECK(witt_mul(a, b) == IntWitt::teichmuller(Z, -6, 8));
    auto e = E_map(IntWitt::teichmuller(Z, 5, 4));
    CHECK(e == std::vector<mpz_class>{1, -5, 0, 0, 0});
    auto one_plus_t = E_inverse(Z, {1, 1}, 4);
    CHECK(one_plus_t(1) == -1);
    CHECK(E_map(one_plus_t) == std::vector<mpz_class>{1, 1, 0, 0, 0});
}

TEST_CASE("Witt addition over F_p is the reduction of integer addition") {
    std::mt19937_64 rng(37);
    auto F = FiniteField::make(Context::make(5, 1, 3));
    FqRing R{F};
    for (int t = 0; t < 20; ++t) {
        auto x = random_int_witt(rng, 10, 6), y = random_int_witt(rng, 10, 6);
        auto s = witt_add(x, y);
        auto reduce = [&](const IntWitt& v) {
            std::vector<FqElement> r;
            for (const auto& c : v.components()) r.push_back(F->from_int(mpz_class(c % 5).get_si()));
            return BigWittVector<FqRing>(R, r);
        };
        CHECK(witt_add(reduce(x), reduce(y)) == reduce(s));
    }
    auto z = BigWittVector<FqRing>::zero(R, 3);
    CHECK_THROWS_AS(witt_mul(z, z), Unsupported);
}

TEST_CASE("Witt vectors over Z_q track precision through ghost inversion") {
    auto ctx = Context::make(3, 2, 6);
    PadicRing R{ctx};
    std::mt19937_64 rng(41);
    std::vector<PadicElement> r;
    for (int i = 0; i < 9; ++i) r.push_back(PadicElement::from_coords(ctx, {rng() % 729, rng() % 729}));
    BigWittVector<PadicRing> x(R, r);
    auto back = ghost_inverse(R, ghost(x));
    for (int i = 1; i <= 9; ++i) {
        const int loss = vp(static_cast<u64>(i), 3);
        CHECK(back(i).precision() >= 6 - 2 * loss);
        CHECK(back(i).equals_mod(x(i), back(i).precision()));
    }
}

TEST_CASE("decomposition by the trace rule") {
    auto ctx = Context::make(3, 1, 5);
    Decomposer dec(ctx);
    auto F = dec.field();
    const auto I = prime_to_p_indices(3, 10);
    for (const auto& f : enumerate_irreducibles(F, 2)) {
        auto a = dec.polynomial(f, I);
        auto b = dec.polynomial_by_conjugates(f, I);
        for (int i : I) {
            CHECK(a.at(i).precision() >= 5);
            CHECK(a.at(i).equals_mod(b.at(i), 5));
        }
        if (f.degree() == 1) {
            // 1 + c t = 1 - (-c) t, so the reciprocal root is -c.
            auto lam = F->teichmuller(F->neg(f.coeffs()[1]));
            for (int i : I) CHECK(a.at(i).equals_mod(lam.pow(static_cast<u64>(i)), 5));
        }
    }
    // f = 1 - t has lambda = 1.
    auto one_minus_t = OneUnitPoly(F, {F->one(), F->from_int(-1)});
    for (auto& [i, c] : dec.polynomial(one_minus_t, I)) CHECK(c.equals_mod(PadicElement::one(ctx), 5));
    for (auto& [i, c] : dec.general(OneUnitPoly::one(F), I)) CHECK(c.is_zero());
}

TEST_CASE("decomposition is additive and matches the ghost spine") {
    std::mt19937_64 rng(43);
    for (auto [p, a] : {std::pair<u64, int>{3, 1}, {3, 2}, {5, 1}}) {
        auto ctx = Context::make(p, a, 3);
        Decomposer dec(ctx);
        auto F = dec.field();
        const auto I = prime_to_p_indices(p, 4);
        for (int t = 0; t < 4; ++t) {
            auto g = random_one_unit(F, 1 + static_cast<int>(rng() % 3), rng);
            auto h = random_one_unit(F, 1 + static_cast<int>(rng() % 2), rng);
            auto cg = dec.general(g, I), ch = dec.general(h, I), cgh = dec.general(g * h, I);
            auto spine = ghost_spine_coordinates(ctx, g, I);
            for (int i : I) {
                CHECK(cgh.at(i).equals_mod(cg.at(i) + ch.at(i), 3));
                CHECK(spine.at(i).value.equals_mod(cg.at(i), 3));
            }
        }
    }
}

TEST_CASE("p-typical valuations of p-th powers") {
    auto ctx = Context::make(3, 1, 3);
    Decomposer dec(ctx);
    auto F = dec.field();
    std::mt19937_64 rng(47);
    const std::vector<int> I{1, 2};
    auto g = random_one_unit(F, 2, rng);
    auto g3 = g * g * g;
    auto g9 = g3 * g3 * g3;
    for (auto [h, shift] : {std::pair<OneUnitPoly, int>{g, 0}, {g3, 1}, {g9, 2}}) {
        auto spine = ghost_spine_coordinates(ctx, h, I);
        auto coords = dec.general(h, I);
        for (int i : I) {
            const auto& s = spine.at(i);
            for (int k = 0; k < shift; ++k) CHECK(F->is_zero(s.typical[k]));
            CHECK(coords.at(i).valuation() >= shift);
            // The first nonzero p-typical component sits at the valuation.
            int first = 0;
            while (first < 3 && F->is_zero(s.typical[first])) ++first;
            CHECK(first == std::min(coords.at(i).valuation(), 3));
        }
    }
}
