#include "wedge/compound.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "wedge/error.hpp"

namespace wedge {

void check_size_cap(std::size_t dim, const SizeCap& cap, const char* what) {
  if (cap.force) return;
  const bool overflow = dim != 0 && dim > SIZE_MAX / dim;
  if (overflow || dim * dim > cap.max_entries)
    throw ResourceError(std::string(what) + ": output of " + std::to_string(dim) + "x" + std::to_string(dim) +
                        " exceeds the cap of " + std::to_string(cap.max_entries) +
                        " entries (set the force flag to override)");
}

double determinant(std::span<const double> a, std::size_t k) {
  switch (k) {
    case 1:
      return a[0];
    case 2:
      return a[0] * a[3] - a[1] * a[2];
    case 3:
      return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
             a[2] * (a[3] * a[7] - a[4] * a[6]);
    default:
      break;
  }
  std::vector<double> lu(a.begin(), a.end());
  double det = 1.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::abs(lu[r * k + c]) > std::abs(lu[p * k + c])) p = r;
    if (lu[p * k + c] == 0.0) return 0.0;
    if (p != c) {
      for (std::size_t j = 0; j < k; ++j) std::swap(lu[c * k + j], lu[p * k + j]);
      det = -det;
    }
    const double piv = lu[c * k + c];
    det *= piv;
    for (std::size_t r = c + 1; r < k; ++r) {
      const double f = lu[r * k + c] / piv;
      if (f == 0.0) continue;
      for (std::size_t j = c + 1; j < k; ++j) lu[r * k + j] -= f * lu[c * k + j];
    }
  }
  return det;
}

namespace {

double minor_unchecked(const DenseMatrix& m, const IndexSet& rows, const IndexSet& cols, std::vector<double>& buf) {
  const std::size_t k = rows.size();
  buf.resize(k * k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) buf[r * k + c] = m(rows[r], cols[c]);
  return determinant(buf, k);
}

}  // namespace

double minor(const DenseMatrix& m, const IndexSet& rows, const IndexSet& cols) {
  if (rows.size() != cols.size()) throw ValidationError("minor: row and column sets differ in size");
  if (rows.size() == 0) throw ValidationError("minor: empty index set");
  rows.check_bound(m.size());
  cols.check_bound(m.size());
  std::vector<double> buf;
  return minor_unchecked(m, rows, cols, buf);
}

DenseMatrix compound_matrix(const DenseMatrix& m, std::size_t j, const SizeCap& cap) {
  const std::size_t n = m.size();
  if (j < 1 || j > n)
    throw ValidationError("compound_matrix: order " + std::to_string(j) + " outside 1.." + std::to_string(n));
  const std::size_t dim = binomial(n, j);
  check_size_cap(dim, cap, "compound_matrix");
  const std::vector<IndexSet> sets = all_index_sets(n, j);
  DenseMatrix out(dim);
  double* dst = out.data();
  const auto rows = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel
  {
    std::vector<double> buf;
#pragma omp for schedule(static)
    for (std::ptrdiff_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < dim; ++c) dst[std::size_t(r) * dim + c] = minor_unchecked(m, sets[r], sets[c], buf);
  }
  return out;
}

DenseMatrix tensor_square(const DenseMatrix& m, const SizeCap& cap) {
  const std::size_t n = m.size();
  const std::size_t dim = n * n;
  check_size_cap(dim, cap, "tensor_square");
  DenseMatrix out(dim);
  double* dst = out.data();
  const auto rows = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const std::size_t i1 = std::size_t(r) / n, i2 = std::size_t(r) % n;
    for (std::size_t k1 = 0; k1 < n; ++k1) {
      const double a = m(i1, k1);
      for (std::size_t k2 = 0; k2 < n; ++k2) dst[std::size_t(r) * dim + k1 * n + k2] = a * m(i2, k2);
    }
  }
  return out;
}

DenseMatrix exterior_square(const DenseMatrix& m, const SizeCap& cap) {
  const std::size_t n = m.size();
  if (n < 2) throw ValidationError("exterior_square: dimension must be at least 2");
  const PairBasis basis(n);
  const std::size_t dim = basis.size();
  check_size_cap(dim, cap, "exterior_square");
  DenseMatrix out(dim);
  double* dst = out.data();
  const auto& pairs = basis.pairs();
  const auto rows = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const auto [i, j] = pairs[r];
    for (std::size_t c = 0; c < dim; ++c) {
      const auto [k, l] = pairs[c];
      dst[std::size_t(r) * dim + c] = m(i, k) * m(j, l) - m(i, l) * m(j, k);
    }
  }
  return out;
}

Vector wedge_vector(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("wedge_vector: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw ValidationError("wedge_vector: length must be at least 2");
  Vector out;
  out.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.push_back(x[i] * y[j] - x[j] * y[i]);
  return out;
}

Vector exterior_apply(const DenseMatrix& m, std::span<const double> w) {
  const std::size_t n = m.size();
  if (n < 2) throw ValidationError("exterior_apply: dimension must be at least 2");
  if (w.size() != n * (n - 1) / 2) throw ValidationError("exterior_apply: vector length does not match pair basis");

  std::vector<double> wm(n * n, 0.0);
  for (std::size_t i = 0, p = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++p) {
      wm[i * n + j] = w[p];
      wm[j * n + i] = -w[p];
    }

  const auto rows = static_cast<std::ptrdiff_t>(n);
  // T = A W
  std::vector<double> t(n * n, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double a = m(std::size_t(i), k);
      if (a == 0.0) continue;
      for (std::size_t l = 0; l < n; ++l) t[std::size_t(i) * n + l] += a * wm[k * n + l];
    }

  // upper triangle of T A^T
  Vector out(w.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const std::size_t ii = std::size_t(i);
    std::size_t p = ii * (2 * n - ii - 1) / 2;
    for (std::size_t j = ii + 1; j < n; ++j, ++p) {
      double s = 0.0;
      for (std::size_t l = 0; l < n; ++l) s += t[ii * n + l] * m(j, l);
      out[p] = s;
    }
  }
  return out;
}

}  // namespace wedge

namespace wedge {

ExteriorPerron exterior_perron_root(const DenseMatrix& m, double tol, std::size_t max_iter) {
  const std::size_t n = m.size();
  if (n < 2) throw ValidationError("exterior_perron_root: dimension must be at least 2");
  const std::size_t dim = n * (n - 1) / 2;
  ExteriorPerron out;
  Vector w(dim, 1.0 / std::sqrt(double(dim)));
  for (std::size_t it = 1; it <= max_iter; ++it) {
    Vector y = exterior_apply(m, w);
    const double ny = norm2(y);
    out.iterations = it;
    if (ny == 0.0) {
      out.lambda = 0.0;
      out.vector = std::move(w);
      out.converged = true;
      return out;
    }
    double diff = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      y[k] /= ny;
      diff = std::max(diff, std::abs(y[k] - w[k]));
    }
    w = std::move(y);
    out.lambda = ny;
    if (diff <= tol) {
      out.converged = true;
      break;
    }
  }
  out.vector = std::move(w);
  return out;
}

}  // namespace wedge
