#include <map>
#include <set>

#include "doctest.h"
#include "wittchar/errors.hpp"
#include "wittchar/ffield.hpp"

using namespace wittchar;

namespace {

FieldPtr field(u64 p, int a) { return FiniteField::make(Context::make(p, a, 3)); }

}  // namespace

TEST_CASE("F_q arithmetic against brute force") {
    for (auto [p, a] : {std::pair<u64, int>{3, 2}, {5, 2}, {3, 3}, {7, 1}}) {
        auto F = field(p, a);
        const u64 q = F->size();
        CHECK(q == *checked_pow(p, a));
        for (u64 i = 0; i < q; ++i) {
            auto x = F->element(i);
            CHECK(F->index(x) == i);
            CHECK(F->pow(x, q) == x);
            CHECK(F->frobenius(x, a) == x);
            CHECK(F->frobenius(x, 1) == F->pow(x, p));
            CHECK(F->frobenius(F->frobenius(x, 1), -1) == x);
            if (!F->is_zero(x)) CHECK(F->mul(x, F->inv(x)) == F->one());
        }
        // Lex order on coordinates matches the index order.
        for (u64 i = 1; i < q; ++i) CHECK(F->element(i - 1) < F->element(i));
        auto g = F->primitive_element();
        std::set<u64> seen;
        auto y = F->one();
        for (u64 k = 0; k + 1 < q; ++k, y = F->mul(y, g)) seen.insert(F->index(y));
        CHECK(seen.size() == q - 1);
    }
}

TEST_CASE("Teichmuller lift reduces back") {
    auto F = field(3, 2);
    for (u64 i = 0; i < 9; ++i) {
        auto x = F->element(i);
        CHECK(F->reduce(F->teichmuller(x)) == x);
    }
}

TEST_CASE("irreducible counts") {
    CHECK(irreducible_count(3, 2) == 3);
    CHECK(irreducible_count(5, 1) == 4);
    CHECK(irreducible_count(5, 2) == 10);
    CHECK(irreducible_count(5, 3) == 40);
    CHECK(irreducible_count(9, 2) == 36);

    auto F5 = field(5, 1);
    auto irr = enumerate_irreducibles(F5, 3);
    std::map<int, int> by_degree;
    for (auto& f : irr) ++by_degree[f.degree()];
    CHECK(by_degree[1] == 4);
    CHECK(by_degree[2] == 10);
    CHECK(by_degree[3] == 40);
    for (size_t i = 1; i < irr.size(); ++i) CHECK(irr[i - 1] < irr[i]);

    auto F9 = field(3, 2);
    for (auto& f : enumerate_irreducibles(F9, 3)) CHECK(fq::is_irreducible(*F9, f.coeffs()));
    CHECK(enumerate_irreducibles(F9, 3).size() == 8 + 36 + 240);
    // Rabin path (degree 5) agrees with the count.
    auto F3 = field(3, 1);
    CHECK(enumerate_irreducibles(F3, 5).size() == 2 + 3 + 8 + 18 + 48);
    CHECK_THROWS_AS(enumerate_irreducibles(F9, 8, 1000), BudgetExceeded);
}

TEST_CASE("factorization of 1-unit polynomials") {
    auto F = field(3, 2);
    auto irr = enumerate_irreducibles(F, 2);
    // Products of known irreducibles factor back into them.
    std::vector<OneUnitPoly> parts{irr[0], irr[0], irr[5], irr[12], irr[12], irr[12], irr.back()};
    OneUnitPoly g = OneUnitPoly::one(F);
    for (auto& f : parts) g = g * f;
    auto fac = factor_one_unit(g);
    std::sort(parts.begin(), parts.end());
    CHECK(fac == parts);
    CHECK_THROWS_AS(OneUnitPoly(F, FqPoly{F->from_int(2), F->one()}), InputError);
}

TEST_CASE("reciprocal roots") {
    auto F = field(3, 2);
    for (auto& f : enumerate_irreducibles(F, 2)) {
        if (f.degree() != 2) continue;
        auto [E, r] = reciprocal_root(f);
        const auto& L = *E.field;
        // Exhaustive search for the lex smallest alpha with f(1/alpha) = 0.
        std::optional<FqElement> best;
        for (u64 i = 1; i < L.size(); ++i) {
            auto a = L.element(i);
            FqElement acc = L.zero();
            auto inv = L.inv(a);
            for (int k = f.degree(); k >= 0; --k) acc = L.add(L.mul(acc, inv), embed(E, f.coeffs()[k]));
            if (L.is_zero(acc)) {
                best = a;
                break;
            }
        }
        REQUIRE(best);
        CHECK(r == *best);
        CHECK(L.orbit_length(r, 2) == 2);
    }
    auto irr = enumerate_irreducibles(F, 1);
    CHECK_THROWS_AS(reciprocal_root(irr[0] * irr[1]), InputError);
}

TEST_CASE("enumerating F_9 over F_3 by degree") {
    auto F3 = field(3, 1);
    FieldEnumerator en(F3, 2, 0);
    std::map<int, int> by_degree;
    FqElement x;
    int d;
    while (en.next(x, d)) ++by_degree[d];
    CHECK(by_degree[1] == 3);
    CHECK(by_degree[2] == 6);
    CHECK_THROWS_AS(FieldEnumerator(F3, 20, 1000), BudgetExceeded);
}
