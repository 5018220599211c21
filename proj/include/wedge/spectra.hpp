#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "wedge/matrix.hpp"

namespace wedge {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

/// Eigenvalue multiset of a real matrix, sorted by modulus descending and then
/// by argument ascending in (-pi, pi]. Multiplicity is folded in by repetition.
class ComplexSpectrum {
 public:
  ComplexSpectrum() = default;
  /// Sorts the given values into canonical order.
  explicit ComplexSpectrum(std::vector<Complex> values);

  const std::vector<Complex>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  const Complex& operator[](std::size_t i) const noexcept { return values_[i]; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

 private:
  std::vector<Complex> values_;
};

/// Canonical ordering predicate used by ComplexSpectrum.
bool spectrum_order(const Complex& a, const Complex& b) noexcept;

/// All eigenvalues of m: one balancing pass, Householder reduction to upper
/// Hessenberg form, then Francis double-shift QR. Throws NumericalError when the
/// QR sweep cap (100 n) is exhausted.
ComplexSpectrum eigenvalues(const DenseMatrix& m, double tol = kDefaultTol);

/// Max modulus; throws ValidationError on an empty spectrum.
double spectral_radius(const ComplexSpectrum& s);

/// Unit eigenvector for an eigenvalue previously returned by eigenvalues(),
/// via inverse iteration on the original matrix.
std::vector<Complex> eigenvector(const DenseMatrix& m, Complex lambda);

/// Real unit eigenvector for a real eigenvalue; sign chosen so the entry of
/// largest modulus is positive.
Vector real_eigenvector(const DenseMatrix& m, double lambda);

/// ||A v - lambda v|| / ||A|| for a unit v (||A|| Frobenius, 1 for the zero matrix).
double eigen_residual(const DenseMatrix& m, Complex lambda, const std::vector<Complex>& v);
double eigen_residual(const DenseMatrix& m, double lambda, const Vector& v);

struct PerronPair {
  double lambda = 0.0;
  Vector vector;
  std::size_t iterations = 0;
  /// True when the power iteration did not settle, or the Perron root is a
  /// multiple eigenvalue and the eigenvector was picked from the full solve.
  bool used_fallback = false;
};

/// Perron root and a nonnegative unit eigenvector of an entrywise nonnegative
/// matrix. Power iteration from the all-ones vector; falls back to the full
/// eigen-solver for imprimitive input or a multiple Perron root, in which case
/// the first nonnegative null vector of (A - rho I) in reduced echelon order is
/// returned (e_1 for the identity).
///
/// Throws ValidationError when an entry is below -tol * max|a_ij| and
/// DegeneratePerronError when rho <= tol * ||A||.
PerronPair perron_pair(const DenseMatrix& m, double tol = kDefaultTol, std::size_t max_iter = 10000);

struct MatchedPair {
  std::size_t a_index = 0;
  std::size_t b_index = 0;
  double residual = 0.0;
};

struct MatchReport {
  bool matched = false;
  double tol = 0.0;
  /// max(1, largest modulus on either side); residuals are divided by this.
  double scale = 1.0;
  double max_residual = 0.0;
  std::vector<MatchedPair> pairs;
  std::vector<Complex> leftover_a;
  std::vector<Complex> leftover_b;
};

/// Greedy nearest-neighbour matching of a against b, walking a in canonical
/// order. Succeeds iff |a| == |b| and every element of a finds a distinct
/// partner within tol * scale.
MatchReport multiset_match(const ComplexSpectrum& a, const ComplexSpectrum& b, double tol);

}  // namespace wedge
