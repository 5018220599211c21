#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace wedge {

using Vector = std::vector<double>;

/// Square real matrix, row-major. Entries are always finite.
class DenseMatrix {
 public:
  DenseMatrix() = default;

  /// n x n zero matrix. Throws ValidationError for n == 0.
  explicit DenseMatrix(std::size_t n);

  /// Takes ownership of n*n row-major entries; validates size and finiteness.
  DenseMatrix(std::size_t n, std::vector<double> entries);

  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }
  std::span<const double> entries() const noexcept { return data_; }
  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  DenseMatrix transposed() const;
  double max_abs() const noexcept;
  double min_entry() const noexcept;
  /// Frobenius norm.
  double norm() const noexcept;
  double trace() const noexcept;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double c, const DenseMatrix& a);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
Vector operator*(const DenseMatrix& a, std::span<const double> x);

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
double norm2(std::span<const double> x) noexcept;

}  // namespace wedge
