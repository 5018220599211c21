#include "wedge/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wedge/error.hpp"

namespace wedge {

DenseMatrix::DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {
  if (n == 0) throw ValidationError("matrix dimension must be at least 1");
}

DenseMatrix::DenseMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), data_(std::move(entries)) {
  if (n == 0) throw ValidationError("matrix dimension must be at least 1");
  if (data_.size() != n * n)
    throw ValidationError("expected " + std::to_string(n * n) + " entries, got " +
                          std::to_string(data_.size()));
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!std::isfinite(data_[k]))
      throw ValidationError("non-finite entry at (" + std::to_string(k / n) + ", " +
                            std::to_string(k % n) + ")");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> r;
  for (const auto& row : rows) r.emplace_back(row);
  *this = from_rows(r);
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw ValidationError("matrix has no rows");
  std::vector<double> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw ValidationError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                            " entries, expected " + std::to_string(n));
    e.insert(e.end(), rows[i].begin(), rows[i].end());
  }
  return DenseMatrix(n, std::move(e));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
  DenseMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double DenseMatrix::min_entry() const noexcept {
  return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end());
}

double DenseMatrix::norm() const noexcept { return norm2(data_); }

double DenseMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.size() != b.size()) throw ValidationError("matrix product: dimension mismatch");
  const std::size_t n = a.size();
  DenseMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

DenseMatrix operator*(double c, const DenseMatrix& a) {
  std::vector<double> e(a.entries().begin(), a.entries().end());
  for (double& v : e) v *= c;
  return DenseMatrix(a.size(), std::move(e));
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.size() != b.size()) throw ValidationError("matrix sum: dimension mismatch");
  std::vector<double> e(a.entries().begin(), a.entries().end());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] += b.entries()[k];
  return DenseMatrix(a.size(), std::move(e));
}

Vector operator*(const DenseMatrix& a, std::span<const double> x) {
  if (x.size() != a.size()) throw ValidationError("matrix-vector product: dimension mismatch");
  Vector y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.size() != b.size()) throw ValidationError("matrix comparison: dimension mismatch");
  double d = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
  return d;
}

double norm2(std::span<const double> x) noexcept {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace wedge
