#pragma once

// Dense polynomials over the prime field F_p, coefficients ascending.
// Only what modulus selection needs: arithmetic, gcd, Rabin's test.

#include <vector>

#include "wittchar/modarith.hpp"

namespace wittchar::fp {

using Poly = std::vector<u64>;

void trim(Poly& f);
int degree(const Poly& f);  // -1 for the zero polynomial

Poly sub(const Poly& f, const Poly& g, u64 p);
Poly mul(const Poly& f, const Poly& g, u64 p);
Poly mod(Poly f, const Poly& g, u64 p);
Poly gcd(Poly f, Poly g, u64 p);
Poly powmod(Poly base, u64 e, const Poly& m, u64 p);

/// Rabin irreducibility test for a polynomial of degree >= 1.
bool is_irreducible(const Poly& f, u64 p);

/// The smallest monic irreducible polynomial of degree n over F_p, where
/// candidates are compared lexicographically on (c_0, c_1, ..., c_{n-1}).
Poly smallest_irreducible(u64 p, int n);

}  // namespace wittchar::fp
