#include "wedge/serial.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "wedge/combinatorics.hpp"
#include "wedge/compound.hpp"
#include "wedge/error.hpp"

namespace wedge::serial {

namespace {

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  return c;
}

double submatrix_det(const DenseMatrix& m, const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) {
  const std::size_t k = r.size();
  std::vector<double> block(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) block[a * k + b] = m(r[a], c[b]);
  return determinant(block, k);
}

}  // namespace

DenseMatrix compound_matrix(const DenseMatrix& m, std::size_t j) {
  const std::size_t n = m.size();
  if (j < 1 || j > n) throw ValidationError("compound_matrix: order out of range");
  const std::size_t dim = binomial(n, j);
  DenseMatrix out(dim);
  auto r = first_combination(j);
  std::size_t ri = 0;
  do {
    auto c = first_combination(j);
    std::size_t ci = 0;
    do {
      out(ri, ci++) = submatrix_det(m, r, c);
    } while (next_combination(c, n));
    ++ri;
  } while (next_combination(r, n));
  return out;
}

DenseMatrix tensor_square(const DenseMatrix& m) {
  const std::size_t n = m.size();
  DenseMatrix out(n * n);
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t i2 = 0; i2 < n; ++i2)
      for (std::size_t k1 = 0; k1 < n; ++k1)
        for (std::size_t k2 = 0; k2 < n; ++k2) out(i1 * n + i2, k1 * n + k2) = m(i1, k1) * m(i2, k2);
  return out;
}

DenseMatrix exterior_square(const DenseMatrix& m) {
  const std::size_t n = m.size();
  if (n < 2) throw ValidationError("exterior_square: dimension must be at least 2");
  const PairBasis basis(n);
  DenseMatrix out(basis.size());
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const auto [i, j] = basis.pair_at(r);
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const auto [k, l] = basis.pair_at(c);
      out(r, c) = m(i, k) * m(j, l) - m(i, l) * m(j, k);
    }
  }
  return out;
}

Vector exterior_apply(const DenseMatrix& m, std::span<const double> w) {
  const std::size_t n = m.size();
  const PairBasis basis(n);
  if (w.size() != basis.size()) throw ValidationError("exterior_apply: vector length does not match pair basis");
  Vector out(basis.size(), 0.0);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const auto [i, j] = basis.pair_at(r);
    double s = 0.0;
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const auto [k, l] = basis.pair_at(c);
      s += (m(i, k) * m(j, l) - m(i, l) * m(j, k)) * w[c];
    }
    out[r] = s;
  }
  return out;
}

MinorScan min_minor(const DenseMatrix& m, std::size_t j) {
  const std::size_t n = m.size();
  if (j < 1 || j > n) throw ValidationError("min_minor: order out of range");
  MinorScan scan{std::numeric_limits<double>::infinity(), 0};
  auto r = first_combination(j);
  do {
    auto c = first_combination(j);
    do {
      scan.min_value = std::min(scan.min_value, submatrix_det(m, r, c));
      ++scan.count;
    } while (next_combination(c, n));
  } while (next_combination(r, n));
  return scan;
}

}  // namespace wedge::serial
