#include "wedge/gk.hpp"

#include <algorithm>
#include <cmath>

#include "wedge/error.hpp"

namespace wedge {

const char* to_string(Classification c) noexcept {
  switch (c) {
    case Classification::second_eigenvalue_found: return "second_eigenvalue_found";
    case Classification::complex_pair_on_circle: return "complex_pair_on_circle";
    case Classification::multiple_leading: return "multiple_leading";
    case Classification::degenerate_rho_zero: return "degenerate_rho_zero";
    case Classification::hypotheses_violated: return "hypotheses_violated";
  }
  return "unknown";
}

const char* to_string(WedgeRadiusMethod m) noexcept {
  switch (m) {
    case WedgeRadiusMethod::dense_eigensolve: return "dense_eigensolve";
    case WedgeRadiusMethod::matrix_free_power: return "matrix_free_power";
    case WedgeRadiusMethod::spectrum_products: return "spectrum_products";
  }
  return "unknown";
}

namespace {

bool is_real(const Complex& z, double scale, double rel) { return std::abs(z.imag()) <= rel * scale; }

// rho(A ^ A) by the cheapest route that is still independent of the spectrum of A.
void wedge_radius(const DenseMatrix& m, const AnalyzeOptions& opts, bool wedge_nonnegative, GKReport& rep) {
  const std::size_t n = m.size();
  if (n < 2) {
    rep.rho_wedge = 0.0;
    rep.rho_wedge_method = WedgeRadiusMethod::dense_eigensolve;
    rep.notes.push_back("1x1 matrix: exterior square is zero-dimensional");
    return;
  }
  const std::size_t pairs = n * (n - 1) / 2;
  if (pairs <= opts.dense_wedge_max_pairs) {
    rep.rho_wedge = spectral_radius(eigenvalues(exterior_square(m, SizeCap{.max_entries = SIZE_MAX}), opts.tol));
    rep.rho_wedge_method = WedgeRadiusMethod::dense_eigensolve;
    return;
  }
  if (wedge_nonnegative) {
    const ExteriorPerron p = exterior_perron_root(m, 1e-13, 20000);
    if (p.converged) {
      rep.rho_wedge = p.lambda;
      rep.rho_wedge_method = WedgeRadiusMethod::matrix_free_power;
      return;
    }
    rep.notes.push_back("matrix-free power iteration on the exterior square did not settle");
  }
  const double a = std::abs(rep.spectrum[0]);
  const double b = rep.spectrum.size() > 1 ? std::abs(rep.spectrum[1]) : 0.0;
  rep.rho_wedge = a * b;
  rep.rho_wedge_method = WedgeRadiusMethod::spectrum_products;
  rep.notes.push_back("rho_wedge taken from products of eigenvalues of A; residual_theorem3 is not an independent check");
}

}  // namespace

GKReport analyze(const DenseMatrix& m, const AnalyzeOptions& opts) {
  if (m.empty()) throw ValidationError("analyze: empty matrix");
  const std::size_t n = m.size();
  GKReport rep;
  rep.tol = opts.tol;
  rep.circle_tol = opts.circle_tol;

  // Hypotheses: A >= 0 and A ^ A >= 0.
  if (n >= 2) {
    rep.hypothesis_certificates = is_two_totally_nonnegative(m, opts.hypotheses);
  } else {
    rep.hypothesis_certificates.first = check_minors_of_order(m, 1, opts.hypotheses);
    rep.hypothesis_certificates.second.order_checked = 2;
  }
  const bool a_nonneg = rep.hypothesis_certificates.first.verdict;
  const bool wedge_nonneg = rep.hypothesis_certificates.second.verdict;

  rep.spectrum = eigenvalues(m, opts.tol);
  const double rho = spectral_radius(rep.spectrum);
  rep.lambda1 = rho;
  rep.lambda2_sorted = n > 1 ? rep.spectrum[1] : Complex(0.0, 0.0);

  const double anorm = m.norm();
  if (anorm == 0.0 || rho <= opts.tol * anorm) {
    rep.classification = Classification::degenerate_rho_zero;
    rep.lambda1 = rho;
    rep.hypotheses_hold = false;
    rep.notes.push_back("spectral radius is zero to tolerance");
    wedge_radius(m, opts, wedge_nonneg, rep);
    rep.residual_theorem3 = std::abs(rep.rho_wedge - rho * std::abs(rep.lambda2_sorted)) / std::max(1.0, rep.rho_wedge);
    return rep;
  }

  // lambda1 through the Perron route when A >= 0.
  std::optional<PerronPair> perron;
  if (a_nonneg) {
    try {
      perron = perron_pair(m, opts.tol);
      rep.lambda1 = perron->lambda;
    } catch (const DegeneratePerronError&) {
    }
  } else {
    rep.notes.push_back("A has negative entries; lambda1 is rho(A) from the full spectrum");
  }

  wedge_radius(m, opts, wedge_nonneg, rep);
  rep.residual_theorem3 =
      std::abs(rep.rho_wedge - std::abs(rep.spectrum[0]) * std::abs(rep.lambda2_sorted)) / std::max(1.0, rep.rho_wedge);

  // Spectral circle.
  const double radius_cut = rho * (1.0 - opts.circle_tol);
  std::vector<Complex> on_circle;
  for (const auto& z : rep.spectrum)
    if (std::abs(z) >= radius_cut) on_circle.push_back(z);
  rep.circle_count = on_circle.size();
  for (const auto& z : on_circle)
    if (std::abs(z - Complex(rho, 0.0)) <= opts.circle_tol * rho) ++rep.leading_multiplicity;
  for (const auto& z : on_circle)
    if (z.imag() > opts.circle_tol * rho) {
      rep.complex_pair = std::make_pair(z, std::conj(z));
      break;
    }

  const bool wedge_positive = rep.rho_wedge > opts.tol * rho * rho;
  rep.hypotheses_hold = a_nonneg && wedge_nonneg && wedge_positive;
  if (!wedge_positive) rep.notes.push_back("rho(A ^ A) is zero to tolerance");

  if (!a_nonneg) {
    rep.classification = Classification::hypotheses_violated;
  } else if (rep.circle_count > 1) {
    if (rep.complex_pair) {
      rep.classification = Classification::complex_pair_on_circle;
      if (rep.leading_multiplicity > 1) rep.notes.push_back("lambda1 is also multiple on the spectral circle");
    } else if (rep.leading_multiplicity > 1) {
      rep.classification = Classification::multiple_leading;
      rep.lambda2 = rep.rho_wedge / rep.lambda1;
    } else {
      rep.classification = Classification::hypotheses_violated;
      rep.notes.push_back("several real eigenvalues on the spectral circle without a multiple lambda1");
    }
  } else if (rep.hypotheses_hold) {
    rep.lambda2 = rep.rho_wedge / rep.lambda1;
    if (rep.residual_theorem3 > opts.report_tol)
      throw NumericalError("analyze: rho(A ^ A) and lambda1 * lambda2 disagree by " + std::to_string(rep.residual_theorem3) +
                           ", above the report tolerance");
    rep.classification = Classification::second_eigenvalue_found;
  } else {
    rep.classification = Classification::hypotheses_violated;
  }
  if (!rep.hypotheses_hold && rep.classification != Classification::hypotheses_violated)
    rep.notes.push_back("hypotheses A >= 0, A ^ A >= 0, rho(A ^ A) > 0 do not all hold");

  // Eigenvector sign structure when lambda1, lambda2 are simple and real.
  const double gap = opts.circle_tol * rho;
  auto simple_real = [&](std::size_t k) {
    if (k >= n || !is_real(rep.spectrum[k], rho, opts.circle_tol)) return false;
    for (std::size_t i = 0; i < n; ++i)
      if (i != k && std::abs(rep.spectrum[i] - rep.spectrum[k]) <= gap) return false;
    return true;
  };
  if (simple_real(0)) {
    const Vector e1 = perron && !perron->used_fallback ? perron->vector : real_eigenvector(m, rep.spectrum[0].real());
    rep.sign_changes_e1 = sign_changes(e1, opts.sign_tol);
    if (simple_real(1)) rep.sign_changes_e2 = sign_changes(real_eigenvector(m, rep.spectrum[1].real()), opts.sign_tol);
  }
  return rep;
}

namespace {

std::vector<Complex> nonzero(const std::vector<Complex>& v, double threshold) {
  std::vector<Complex> out;
  for (const auto& z : v)
    if (std::abs(z) > threshold) out.push_back(z);
  return out;
}

VerificationReport compare(int theorem, const ComplexSpectrum& op, const std::vector<Complex>& products, double rho, double tol) {
  VerificationReport rep;
  rep.theorem = theorem;
  rep.tol = tol;
  rep.zero_threshold = tol * rho * rho;
  const ComplexSpectrum a(nonzero(op.values(), rep.zero_threshold));
  const ComplexSpectrum b(nonzero(products, rep.zero_threshold));
  const MatchReport mr = multiset_match(a, b, tol);
  rep.max_residual = mr.max_residual;
  rep.compared = mr.pairs.size();
  // Values that could have crossed the zero filter by a within-tolerance
  // perturbation are indistinguishable from filtered zeros.
  const double band = rep.zero_threshold + tol * mr.scale;
  for (const auto& z : mr.leftover_a)
    if (std::abs(z) > band) rep.leftover_operator.push_back(z);
  for (const auto& z : mr.leftover_b)
    if (std::abs(z) > band) rep.leftover_products.push_back(z);
  rep.matched = rep.leftover_operator.empty() && rep.leftover_products.empty() && rep.max_residual <= tol;
  return rep;
}

}  // namespace

VerificationReport verify_theorem1(const DenseMatrix& m, double tol, const SizeCap& cap) {
  const ComplexSpectrum base = eigenvalues(m);
  const ComplexSpectrum op = eigenvalues(tensor_square(m, cap));
  std::vector<Complex> products;
  products.reserve(base.size() * base.size());
  for (const auto& a : base)
    for (const auto& b : base) products.push_back(a * b);
  return compare(1, op, products, spectral_radius(base), tol);
}

VerificationReport verify_theorem2(const DenseMatrix& m, double tol, const SizeCap& cap) {
  if (m.size() < 2) throw ValidationError("verify_theorem2: dimension must be at least 2");
  const ComplexSpectrum base = eigenvalues(m);
  const ComplexSpectrum op = eigenvalues(exterior_square(m, cap));
  std::vector<Complex> products;
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j) products.push_back(base[i] * base[j]);
  return compare(2, op, products, spectral_radius(base), tol);
}

}  // namespace wedge
