#pragma once

#include <span>

#include "detflow/polyalg/poly.hpp"

namespace detflow {

/// det [x_{rows[a], cols[b]}]_{a,b} with rows and columns taken in the listed
/// order (so a repeated index gives 0 and a permuted list picks up the sign of
/// the permutation). Indices are 1-based; lists must have equal length >= 1.
Poly submatrix_determinant(Shape shape, std::span<const int> rows, std::span<const int> cols);

}  // namespace detflow
