#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "wedge/error.hpp"
#include "wedge/positivity.hpp"
#include "wedge/spectra.hpp"

using namespace wedge;

namespace {

bool same_multiset(const ComplexSpectrum& a, const ComplexSpectrum& b, double tol) {
  return multiset_match(a, b, tol).matched;
}

}  // namespace

TEST_SUITE("spectra") {
  TEST_CASE("eigenvalues of small closed-form cases") {
    auto id = eigenvalues(DenseMatrix::identity(3));
    REQUIRE(id.size() == 3);
    for (const auto& z : id) CHECK(std::abs(z - Complex(1.0, 0.0)) < 1e-14);

    const double d[] = {3, 2, 1};
    auto diag = eigenvalues(DenseMatrix::diagonal(d));
    CHECK(diag[0] == Complex(3.0, 0.0));
    CHECK(diag[1] == Complex(2.0, 0.0));
    CHECK(diag[2] == Complex(1.0, 0.0));

    auto rot = eigenvalues(DenseMatrix{{0, -1}, {1, 0}});
    REQUIRE(rot.size() == 2);
    // argument ascending: -i before i
    CHECK(std::abs(rot[0] - Complex(0, -1)) < 1e-15);
    CHECK(std::abs(rot[1] - Complex(0, 1)) < 1e-15);
  }

  TEST_CASE("1x1 and defective inputs") {
    CHECK(eigenvalues(DenseMatrix{{-4.5}})[0] == Complex(-4.5, 0.0));
    auto jordan = eigenvalues(DenseMatrix{{2, 1}, {0, 2}});
    CHECK(std::abs(jordan[0] - 2.0) < 1e-12);
    CHECK(std::abs(jordan[1] - 2.0) < 1e-12);
  }

  TEST_CASE("validation errors") {
    CHECK_THROWS_AS(DenseMatrix(2, {1.0, std::nan(""), 0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(DenseMatrix(2, {1.0, std::numeric_limits<double>::infinity(), 0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(DenseMatrix(2, {1.0, 2.0, 3.0}), ValidationError);
    CHECK_THROWS_AS(eigenvalues(DenseMatrix::identity(2), 0.0), ValidationError);
    CHECK_THROWS_AS(spectral_radius(ComplexSpectrum{}), ValidationError);
  }

  TEST_CASE("spectral radius") {
    CHECK(spectral_radius(ComplexSpectrum({3.0, 2.0, 1.0})) == 3.0);
    CHECK(spectral_radius(ComplexSpectrum({Complex(0, 1), Complex(0, -1)})) == 1.0);
    CHECK(spectral_radius(ComplexSpectrum({0.0})) == 0.0);
  }

  TEST_CASE("sort order is modulus descending then argument ascending") {
    ComplexSpectrum s({Complex(-1, 0), Complex(0, 1), Complex(2, 0), Complex(1, 0), Complex(0, -1)});
    CHECK(s[0] == Complex(2, 0));
    CHECK(s[1] == Complex(0, -1));
    CHECK(s[2] == Complex(1, 0));
    CHECK(s[3] == Complex(0, 1));
    CHECK(s[4] == Complex(-1, 0));  // arg pi, never -pi
    ComplexSpectrum t({Complex(-1, -0.0)});
    CHECK(std::signbit(t[0].imag()) == false);
  }

  TEST_CASE("agrees with an independent eigen-solver on random matrices") {
    for (std::uint32_t seed = 1; seed <= 40; ++seed) {
      const std::size_t n = 2 + seed % 12;
      const DenseMatrix m = oracle::random_matrix(n, seed);
      const auto mine = eigenvalues(m);
      const auto ref = oracle::eigen_spectrum(m);
      INFO("seed " << seed << " n " << n);
      CHECK(same_multiset(mine, ref, 1e-10));
    }
  }

  TEST_CASE("conjugate closure, trace and determinant") {
    for (std::uint32_t seed = 100; seed < 130; ++seed) {
      const std::size_t n = 2 + seed % 9;
      const DenseMatrix m = oracle::random_matrix(n, seed);
      const auto s = eigenvalues(m);
      std::vector<Complex> conj;
      for (const auto& z : s) conj.push_back(std::conj(z));
      CHECK(same_multiset(s, ComplexSpectrum(conj), 1e-12));

      Complex sum = 0.0, prod = 1.0;
      for (const auto& z : s) {
        sum += z;
        prod *= z;
      }
      const double scale = m.norm();
      CHECK(std::abs(sum - m.trace()) <= double(n) * 1e-9 * scale);
      oracle::Dense rows(n, std::vector<double>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
      CHECK(std::abs(prod - oracle::laplace_det(rows)) <= 1e-9 * std::pow(std::max(scale, 1.0), double(n)));
    }
  }

  TEST_CASE("spectral radius is transpose invariant") {
    for (std::uint32_t seed = 200; seed < 220; ++seed) {
      const DenseMatrix m = oracle::random_matrix(3 + seed % 6, seed);
      CHECK(spectral_radius(eigenvalues(m)) == doctest::Approx(spectral_radius(eigenvalues(m.transposed()))).epsilon(1e-9));
    }
  }

  TEST_CASE("eigenvectors have small backward error") {
    for (std::uint32_t seed = 300; seed < 315; ++seed) {
      const DenseMatrix m = oracle::random_matrix(2 + seed % 8, seed);
      for (const auto& z : eigenvalues(m)) {
        const auto v = eigenvector(m, z);
        CHECK(eigen_residual(m, z, v) <= kDefaultTol);
      }
    }
    const DenseMatrix sym{{2, 1, 0}, {1, 2, 1}, {0, 1, 2}};
    const Vector v = real_eigenvector(sym, 2.0);
    CHECK(eigen_residual(sym, 2.0, v) <= 1e-12);
    CHECK(std::abs(v[1]) < 1e-12);
  }

  TEST_CASE("perron pair") {
    auto p = perron_pair(DenseMatrix{{2, 1}, {1, 2}});
    CHECK(p.lambda == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(p.vector[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(p.vector[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-9));

    auto id = perron_pair(DenseMatrix::identity(2));
    CHECK(id.lambda == doctest::Approx(1.0));
    CHECK(id.used_fallback);
    CHECK(id.vector == Vector{1.0, 0.0});

    CHECK_THROWS_AS(perron_pair(DenseMatrix{{0, 1}, {0, 0}}), DegeneratePerronError);
    CHECK_THROWS_AS(perron_pair(DenseMatrix{{1, -1}, {0, 1}}), ValidationError);

    // imprimitive: power iteration oscillates, the fallback still finds rho
    auto swap = perron_pair(DenseMatrix{{0, 2}, {2, 0}});
    CHECK(swap.lambda == doctest::Approx(2.0));
    CHECK(eigen_residual(DenseMatrix{{0, 2}, {2, 0}}, swap.lambda, swap.vector) < 1e-9);

    // reducible with a Jordan block at rho
    auto jordan = perron_pair(DenseMatrix{{1, 1}, {0, 1}});
    CHECK(jordan.lambda == doctest::Approx(1.0));
    CHECK(jordan.vector[0] == doctest::Approx(1.0));
    CHECK(jordan.vector[1] == doctest::Approx(0.0));
  }

  TEST_CASE("perron pair matches the spectral radius on nonnegative matrices") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const std::size_t n = 1 + seed % 7;
      const DenseMatrix m = seed % 2 ? random_tn(n, seed, 2 * n) : [&] {
        DenseMatrix a = oracle::random_matrix(n, std::uint32_t(seed));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) a(i, j) = std::abs(a(i, j));
        return a;
      }();
      const auto p = perron_pair(m);
      INFO("seed " << seed);
      CHECK(p.lambda == doctest::Approx(spectral_radius(oracle::eigen_spectrum(m))).epsilon(1e-9));
      CHECK(*std::min_element(p.vector.begin(), p.vector.end()) >= -1e-9);
      CHECK(norm2(p.vector) == doctest::Approx(1.0));
      CHECK(eigen_residual(m, p.lambda, p.vector) < 1e-8);
    }
  }

  TEST_CASE("multiset match") {
    auto r = multiset_match(ComplexSpectrum({2.0, 3.0, 6.0}), ComplexSpectrum({6.0, 3.0, 2.0}), 1e-12);
    CHECK(r.matched);
    CHECK(r.max_residual == 0.0);

    const double eps = 1e-11;
    r = multiset_match(ComplexSpectrum({1.0}), ComplexSpectrum({1.0 + eps}), 1e-9);
    CHECK(r.matched);
    CHECK(r.max_residual == doctest::Approx(eps).epsilon(1e-3));

    r = multiset_match(ComplexSpectrum({1.0, 2.0}), ComplexSpectrum({1.0}), 1e-9);
    CHECK_FALSE(r.matched);
    REQUIRE(r.leftover_a.size() == 1);
    CHECK(r.leftover_a[0] == Complex(2.0, 0.0));
    CHECK(r.leftover_b.empty());

    // conjugates are distinct elements
    r = multiset_match(ComplexSpectrum({Complex(0, 1), Complex(0, 1)}), ComplexSpectrum({Complex(0, 1), Complex(0, -1)}), 1e-9);
    CHECK_FALSE(r.matched);
    CHECK_THROWS_AS(multiset_match(ComplexSpectrum({1.0}), ComplexSpectrum({1.0}), 0.0), ValidationError);
  }
}
