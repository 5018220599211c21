#pragma once

#include <cstddef>
#include <span>

#include "wedge/combinatorics.hpp"
#include "wedge/matrix.hpp"

namespace wedge {

/// Output-size guard for compound and Kronecker constructions.
struct SizeCap {
  std::size_t max_entries = 1'000'000;
  bool force = false;
};

/// Throws ResourceError if a dim x dim output would exceed the cap.
void check_size_cap(std::size_t dim, const SizeCap& cap, const char* what);

/// Determinant of m[rows, cols]. Closed form for orders 1..3, LU with partial
/// pivoting above that.
double minor(const DenseMatrix& m, const IndexSet& rows, const IndexSet& cols);

/// Determinant of a k x k row-major block (k >= 1).
double determinant(std::span<const double> block, std::size_t k);

/// j-th compound: all order-j minors, rows and columns indexed by j-subsets in
/// lexicographic order. Parallel over output rows.
DenseMatrix compound_matrix(const DenseMatrix& m, std::size_t j, const SizeCap& cap = {});

/// Kronecker square A (x) A with row-major pair flattening (i1, i2) -> i1 n + i2.
DenseMatrix tensor_square(const DenseMatrix& m, const SizeCap& cap = {});

/// Matrix of A ^ A on the unnormalized basis {e_i ^ e_j : i < j} in PairBasis
/// order. Equal to compound_matrix(m, 2), computed from the wedge formula.
DenseMatrix exterior_square(const DenseMatrix& m, const SizeCap& cap = {});

/// Components x_i y_j - x_j y_i over PairBasis order.
Vector wedge_vector(std::span<const double> x, std::span<const double> y);

/// (A ^ A) w without forming the exterior square: w is unpacked to the
/// antisymmetric matrix W and the upper triangle of A W A^T is returned.
/// O(n^3) work and O(n^2) memory.
Vector exterior_apply(const DenseMatrix& m, std::span<const double> w);

}  // namespace wedge

namespace wedge {

struct ExteriorPerron {
  double lambda = 0.0;
  Vector vector;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Power iteration on A ^ A through exterior_apply, starting from the all-ones
/// pair vector. Meaningful when A ^ A is entrywise nonnegative; then lambda
/// approaches rho(A ^ A). Stops when successive unit iterates differ by at most
/// tol in max norm.
ExteriorPerron exterior_perron_root(const DenseMatrix& m, double tol = 1e-12, std::size_t max_iter = 5000);

}  // namespace wedge
