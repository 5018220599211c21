#pragma once

// Single-threaded reference versions of the parallel kernels. They follow the
// defining formulas as literally as possible and exist for cross-checking and
// benchmarking; production callers use the versions in wedge/compound.hpp and
// wedge/positivity.hpp.

#include <cstddef>
#include <span>

#include "wedge/matrix.hpp"

namespace wedge::serial {

DenseMatrix compound_matrix(const DenseMatrix& m, std::size_t j);
DenseMatrix tensor_square(const DenseMatrix& m);
DenseMatrix exterior_square(const DenseMatrix& m);

/// Direct double sum over pairs k < l; O(n^4).
Vector exterior_apply(const DenseMatrix& m, std::span<const double> w);

/// Smallest minor of order j over all row/column subsets, and how many were
/// visited. No early exit.
struct MinorScan {
  double min_value = 0.0;
  std::size_t count = 0;
};
MinorScan min_minor(const DenseMatrix& m, std::size_t j);

}  // namespace wedge::serial
