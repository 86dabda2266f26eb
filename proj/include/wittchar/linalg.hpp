#pragma once

// Dense linear algebra over Z/p^k with row-major square matrices.

#include <optional>
#include <vector>

#include "wittchar/modarith.hpp"

namespace wittchar::linalg {

using Matrix = std::vector<u64>;  // row-major

/// Inverse of an n x n matrix modulo m = p^k, or nullopt when it is singular
/// mod p.
std::optional<Matrix> inverse(Matrix a, int n, u64 p, u64 m);

/// Solves a x = b modulo m = p^k; nullopt when a is singular mod p.
std::optional<std::vector<u64>> solve(Matrix a, int n, std::vector<u64> b, u64 p, u64 m);

/// v_p(det a) computed modulo m = p^k; returns k when det vanishes mod m.
int det_valuation(Matrix a, int n, u64 p, u64 m);

/// Basis of the right kernel of an r x c matrix over F_p.
std::vector<std::vector<u64>> kernel_mod_p(Matrix a, int rows, int cols, u64 p);

/// Indices of `cols` rows of an r x c matrix that are linearly independent
/// mod p; the first independent rows in order. Empty if the rank is short.
std::vector<int> independent_rows(const Matrix& a, int rows, int cols, u64 p);

}  // namespace wittchar::linalg
