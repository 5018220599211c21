#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "wedge/compound.hpp"
#include "wedge/error.hpp"
#include "wedge/gk.hpp"
#include "wedge/positivity.hpp"
#include "wedge/report_json.hpp"

using namespace wedge;

namespace {

// |lambda_1| |lambda_2| from an independent eigen-solve of A.
double product_of_top_two(const DenseMatrix& m) {
  auto v = oracle::eigen_values(m);
  std::sort(v.begin(), v.end(), [](auto a, auto b) { return std::abs(a) > std::abs(b); });
  return std::abs(v[0]) * std::abs(v[1]);
}

double oracle_rho_wedge(const DenseMatrix& m) {
  double rho = 0.0;
  for (auto z : oracle::eigen_values(oracle::compound(m, 2))) rho = std::max(rho, std::abs(z));
  return rho;
}

}  // namespace

TEST_SUITE("gk") {
  TEST_CASE("diagonal example") {
    const double d[] = {3, 2, 1};
    const GKReport r = analyze(DenseMatrix::diagonal(d));
    CHECK(r.classification == Classification::second_eigenvalue_found);
    CHECK(r.lambda1 == doctest::Approx(3.0).epsilon(1e-14));
    REQUIRE(r.lambda2);
    CHECK(*r.lambda2 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r.rho_wedge == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(r.residual_theorem3 <= 1e-14);
    CHECK(r.hypotheses_hold);
    CHECK(r.circle_count == 1);
    REQUIRE(r.sign_changes_e1);
    CHECK(r.sign_changes_e1->strict_count == 0);
  }

  TEST_CASE("tridiagonal example") {
    const DenseMatrix m{{2, 1, 0}, {1, 2, 1}, {0, 1, 2}};
    const GKReport r = analyze(m);
    const double s2 = std::numbers::sqrt2;
    CHECK(r.classification == Classification::second_eigenvalue_found);
    CHECK(r.lambda1 == doctest::Approx(2 + s2).epsilon(1e-12));
    REQUIRE(r.lambda2);
    CHECK(*r.lambda2 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.rho_wedge == doctest::Approx(oracle_rho_wedge(m)).epsilon(1e-12));
    CHECK(r.rho_wedge == doctest::Approx(2 * (2 + s2)).epsilon(1e-12));
    CHECK(r.residual_theorem3 <= 1e-8);
    CHECK(r.sign_changes_e1->strict_count == 0);
    CHECK(r.sign_changes_e2->strict_count == 1);
    CHECK(r.rho_wedge_method == WedgeRadiusMethod::dense_eigensolve);
  }

  TEST_CASE("three-cycle puts a conjugate pair on the circle") {
    const DenseMatrix c = oracle::cycle3();
    const GKReport r = analyze(c);
    CHECK(r.classification == Classification::complex_pair_on_circle);
    CHECK_FALSE(r.hypotheses_hold);
    CHECK(r.hypothesis_certificates.first.verdict);
    CHECK_FALSE(r.hypothesis_certificates.second.verdict);
    REQUIRE(r.hypothesis_certificates.second.witness);
    CHECK(r.hypothesis_certificates.second.witness->value == -1.0);
    CHECK(r.circle_count == 3);
    CHECK(r.lambda1 == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(r.complex_pair);
    const auto [a, b] = *r.complex_pair;
    CHECK(std::abs(std::abs(a) - std::abs(b)) <= 1e-9);
    CHECK(std::abs(a - std::conj(b)) <= 1e-9);
    CHECK(std::abs(std::arg(a)) == doctest::Approx(2 * std::numbers::pi / 3).epsilon(1e-9));
    // oracle: all three eigenvalues on the unit circle
    for (auto z : oracle::eigen_values(c)) CHECK(std::abs(z) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(r.notes.empty());
  }

  TEST_CASE("identity has a multiple leading eigenvalue") {
    const GKReport r = analyze(DenseMatrix::identity(4));
    CHECK(r.classification == Classification::multiple_leading);
    CHECK(r.leading_multiplicity == 4);
    CHECK(r.lambda1 == 1.0);
    for (auto z : oracle::eigen_values(DenseMatrix::identity(4))) CHECK(z == std::complex<double>(1.0));
  }

  TEST_CASE("nilpotent is degenerate") {
    const DenseMatrix n{{0, 1, 1}, {0, 0, 1}, {0, 0, 0}};
    const GKReport r = analyze(n);
    CHECK(r.classification == Classification::degenerate_rho_zero);
    CHECK(r.lambda1 <= 1e-9);
    CHECK_FALSE(r.lambda2);
    for (auto z : oracle::eigen_values(n)) CHECK(std::abs(z) <= 1e-12);
  }

  TEST_CASE("negative entries violate the hypotheses but keep spectral data") {
    const DenseMatrix m{{3, -1}, {0, 1}};
    const GKReport r = analyze(m);
    CHECK(r.classification == Classification::hypotheses_violated);
    CHECK_FALSE(r.hypothesis_certificates.first.verdict);
    CHECK(r.lambda1 == doctest::Approx(3.0));
    CHECK(r.rho_wedge == doctest::Approx(3.0));
  }

  TEST_CASE("analyze on random TN matrices") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const std::size_t n = 2 + seed % 7;
      const DenseMatrix m = random_tn(n, seed, 3 * n);
      const GKReport r = analyze(m);
      CHECK(r.hypotheses_hold);
      CHECK(r.classification != Classification::complex_pair_on_circle);
      CHECK(r.classification != Classification::hypotheses_violated);
      CHECK(r.rho_wedge == doctest::Approx(oracle_rho_wedge(m)).epsilon(1e-9));
      CHECK(r.rho_wedge == doctest::Approx(product_of_top_two(m)).epsilon(1e-9));
      if (r.classification == Classification::second_eigenvalue_found) {
        REQUIRE(r.lambda2);
        CHECK(*r.lambda2 > 0.0);
        CHECK(*r.lambda2 < r.lambda1);
        CHECK(r.residual_theorem3 <= 1e-8);
        if (n > 2) CHECK(std::abs(r.spectrum[1]) >= std::abs(r.spectrum[2]) - 1e-9);
      }
    }
  }

  TEST_CASE("random oscillatory matrices") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const std::size_t n = 2 + seed % 5;
      const GKReport r = analyze(random_oscillatory(n, seed));
      CHECK(r.classification == Classification::second_eigenvalue_found);
      REQUIRE(r.sign_changes_e1);
      REQUIRE(r.sign_changes_e2);
      CHECK(r.sign_changes_e1->strict_count == 0);
      CHECK(r.sign_changes_e2->strict_count == 1);
      CHECK(std::abs(*r.lambda2 - r.lambda2_sorted.real()) / *r.lambda2 <= 1e-8);
    }
  }

  TEST_CASE("scale equivariance and transpose invariance") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const DenseMatrix m = random_oscillatory(5, 100 + seed);
      const GKReport r = analyze(m);
      const GKReport s = analyze(2.5 * m);
      const GKReport t = analyze(m.transposed());
      CHECK(s.classification == r.classification);
      CHECK(s.lambda1 == doctest::Approx(2.5 * r.lambda1).epsilon(1e-10));
      CHECK(*s.lambda2 == doctest::Approx(2.5 * *r.lambda2).epsilon(1e-10));
      CHECK(s.rho_wedge == doctest::Approx(6.25 * r.rho_wedge).epsilon(1e-10));
      CHECK(s.sign_changes_e1->strict_count == r.sign_changes_e1->strict_count);
      CHECK(s.sign_changes_e2->strict_count == r.sign_changes_e2->strict_count);
      CHECK(t.classification == r.classification);
      CHECK(t.lambda1 == doctest::Approx(r.lambda1).epsilon(1e-10));
      CHECK(*t.lambda2 == doctest::Approx(*r.lambda2).epsilon(1e-10));
      CHECK(t.rho_wedge == doctest::Approx(r.rho_wedge).epsilon(1e-10));
    }
  }

  TEST_CASE("large inputs use the matrix-free wedge radius") {
    const DenseMatrix m = random_tn(40, 3, 120);
    AnalyzeOptions opts;
    opts.dense_wedge_max_pairs = 100;
    const GKReport r = analyze(m, opts);
    CHECK(r.rho_wedge_method == WedgeRadiusMethod::matrix_free_power);
    CHECK(r.rho_wedge == doctest::Approx(product_of_top_two(m)).epsilon(1e-8));
  }

  TEST_CASE("theorem 1 verifier") {
    const double d[] = {1, 2};
    auto r = verify_theorem1(DenseMatrix::diagonal(d));
    CHECK(r.matched);
    CHECK(r.compared == 4);
    CHECK(r.max_residual == 0.0);
    CHECK(verify_theorem1(DenseMatrix{{0, 1}, {0, 0}}).matched);
    CHECK(verify_theorem1(DenseMatrix{{0, 1}, {0, 0}}).compared == 0);
    auto tn = verify_theorem1(random_tn(4, 7, 20));
    CHECK(tn.matched);
    CHECK(tn.max_residual < 1e-8);
    for (std::uint32_t seed = 0; seed < 10; ++seed) CHECK(verify_theorem1(oracle::random_matrix(4, seed)).matched);
    CHECK_THROWS_AS(verify_theorem1(DenseMatrix(40), 1e-8, SizeCap{.max_entries = 1000}), ResourceError);
  }

  TEST_CASE("theorem 2 verifier") {
    const double d[] = {1, 2, 3};
    auto r = verify_theorem2(DenseMatrix::diagonal(d));
    CHECK(r.matched);
    CHECK(r.compared == 3);
    const DenseMatrix two{{1.5, -2}, {0.25, 4}};
    auto t = verify_theorem2(two);
    CHECK(t.matched);
    CHECK(exterior_square(two)(0, 0) == 1.5 * 4 + 2 * 0.25);
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
      const DenseMatrix m = oracle::random_matrix(6, seed);
      auto v = verify_theorem2(m);
      CHECK(v.matched);
      CHECK(v.max_residual < 1e-8);
      CHECK(v.leftover_operator.empty());
      CHECK(v.leftover_products.empty());
    }
    CHECK_THROWS_AS(verify_theorem2(DenseMatrix(1)), ValidationError);
  }

  TEST_CASE("verifier detects a wrong operator") {
    // Sanity check of the verifier itself: a perturbed spectrum must not match.
    const double d[] = {1, 2, 3};
    auto r = verify_theorem2(DenseMatrix::diagonal(d), 1e-8);
    CHECK(r.matched);
    const auto bad = multiset_match(ComplexSpectrum(std::vector<Complex>{2, 3, 6.001}), ComplexSpectrum(std::vector<Complex>{2, 3, 6}), 1e-8);
    CHECK_FALSE(bad.matched);
  }

  TEST_CASE("report JSON schema") {
    const Json j = to_json(analyze(oracle::cycle3()));
    for (const char* key : {"classification", "lambda1", "lambda2", "complex_pair", "rho_wedge", "residual_theorem3",
                            "sign_changes_e1", "sign_changes_e2", "hypothesis_certificates"})
      CHECK(j.contains(key));
    CHECK(j["classification"] == "complex_pair_on_circle");
    CHECK(j["complex_pair"][0].contains("re"));
    CHECK(j["complex_pair"][0].contains("im"));
    CHECK(j["hypothesis_certificates"].size() == 2);

    const Json v = to_json(verify_theorem2(oracle::random_matrix(4, 1)));
    CHECK(v["theorem"] == 2);
    CHECK(v["matched"] == true);
    CHECK(v["leftovers"]["operator"].empty());
  }
}
