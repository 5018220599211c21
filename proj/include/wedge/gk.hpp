#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wedge/compound.hpp"
#include "wedge/matrix.hpp"
#include "wedge/positivity.hpp"
#include "wedge/spectra.hpp"

namespace wedge {

/// What the spectral circle |lambda| = rho(A) looks like, read together with the
/// hypotheses A >= 0, A ^ A >= 0 and rho(A ^ A) > 0.
enum class Classification {
  second_eigenvalue_found,
  complex_pair_on_circle,
  multiple_leading,
  degenerate_rho_zero,
  hypotheses_violated,
};

const char* to_string(Classification c) noexcept;

enum class WedgeRadiusMethod { dense_eigensolve, matrix_free_power, spectrum_products };

const char* to_string(WedgeRadiusMethod m) noexcept;

struct AnalyzeOptions {
  double tol = kDefaultTol;
  /// lambda is on the spectral circle iff |lambda| >= lambda1 (1 - circle_tol).
  double circle_tol = 1e-7;
  /// Upper bound on residual_theorem3 for second_eigenvalue_found.
  double report_tol = 1e-8;
  /// Exterior squares with at most this many pair indices are eigen-solved
  /// densely; larger ones go through matrix-free power iteration.
  std::size_t dense_wedge_max_pairs = 435;
  /// Relative threshold below which eigenvector entries count as zero.
  double sign_tol = 1e-9;
  TnOptions hypotheses{.tol = kDefaultTol, .budget = 10'000'000, .allow_sampling = true, .samples_per_order = 20000, .seed = 0};
};

struct GKReport {
  double lambda1 = 0.0;
  /// rho(A ^ A) / lambda1 (second_eigenvalue_found and multiple_leading only).
  std::optional<double> lambda2;
  /// Second entry of the sorted spectrum of A.
  Complex lambda2_sorted{0.0, 0.0};
  std::optional<std::pair<Complex, Complex>> complex_pair;
  Classification classification = Classification::hypotheses_violated;
  double rho_wedge = 0.0;
  WedgeRadiusMethod rho_wedge_method = WedgeRadiusMethod::dense_eigensolve;
  /// |rho(A ^ A) - |lambda_1| |lambda_2|| / max(1, rho(A ^ A)), lambda_i from
  /// the sorted spectrum.
  double residual_theorem3 = 0.0;
  std::optional<SignChangeCount> sign_changes_e1;
  std::optional<SignChangeCount> sign_changes_e2;
  /// Order 1 (A >= 0) and order 2 (A ^ A >= 0).
  std::pair<TNCertificate, TNCertificate> hypothesis_certificates;
  bool hypotheses_hold = false;
  std::size_t circle_count = 0;
  std::size_t leading_multiplicity = 0;
  double tol = 0.0;
  double circle_tol = 0.0;
  ComplexSpectrum spectrum;
  std::vector<std::string> notes;
};

GKReport analyze(const DenseMatrix& m, const AnalyzeOptions& opts = {});

struct VerificationReport {
  int theorem = 0;
  bool matched = false;
  double max_residual = 0.0;
  double tol = 0.0;
  /// Nonzero filter: values with modulus <= zero_threshold are dropped.
  double zero_threshold = 0.0;
  /// Operator side: eigenvalues of the tensor or exterior square.
  std::vector<Complex> leftover_operator;
  /// Product side: products of eigenvalues of A.
  std::vector<Complex> leftover_products;
  std::size_t compared = 0;
};

/// Nonzero eigenvalues of A (x) A against all n^2 products lambda_i lambda_j.
VerificationReport verify_theorem1(const DenseMatrix& m, double tol = 1e-8, const SizeCap& cap = {});

/// Nonzero eigenvalues of A ^ A against the products lambda_i lambda_j, i < j.
VerificationReport verify_theorem2(const DenseMatrix& m, double tol = 1e-8, const SizeCap& cap = {});

}  // namespace wedge
