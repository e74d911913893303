#pragma once

#include <optional>
#include <vector>

#include "okapain/rational_function.hpp"

namespace okapain::linalg {

using Matrix = std::vector<std::vector<cas::RationalFunction>>;
using Vector = std::vector<cas::RationalFunction>;

int rank(Matrix m);

// Particular solution of A x = b with free variables set to zero, or nullopt
// when inconsistent.
std::optional<Vector> solve(Matrix a, Vector b);

// Basis of the nullspace of A.
std::vector<Vector> nullspace(Matrix a);

// Exact determinant: rows are cleared to polynomials, then fraction-free
// Bareiss elimination, then the cleared factors are divided back out.
cas::RationalFunction determinant(const Matrix& m);

}  // namespace okapain::linalg
