#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "wedge/combinatorics.hpp"
#include "wedge/matrix.hpp"
#include "wedge/random.hpp"

namespace wedge {

struct MinorWitness {
  IndexSet rows;
  IndexSet cols;
  double value = 0.0;
};

enum class CheckMode { exhaustive, sampled };

/// Outcome of a total-nonnegativity check up to some order.
///
/// A minor of order j counts as a violation when it is below
/// -tol * (max |a_ij|)^j. In exhaustive mode the scan visits orders 1..k, rows
/// and columns in lexicographic order, and stops at the first violation;
/// minors_evaluated is the position of that stop in the scan, independent of
/// thread count. In sampled mode the verdict only covers the minors drawn.
struct TNCertificate {
  std::size_t order_checked = 0;
  bool verdict = true;
  std::optional<MinorWitness> witness;
  std::size_t minors_evaluated = 0;
  CheckMode mode = CheckMode::exhaustive;
  double tol = 0.0;
};

struct TnOptions {
  double tol = 1e-9;
  /// Exhaustive scans above this many minors are refused (or sampled).
  std::size_t budget = 10'000'000;
  bool allow_sampling = false;
  /// Minors drawn per order in sampled mode.
  std::size_t samples_per_order = 2000;
  std::uint64_t seed = 0;
};

/// Sum over j = lo..hi of C(n, j)^2, saturating.
std::size_t minor_count(std::size_t n, std::size_t lo, std::size_t hi) noexcept;

/// All minors of orders 1..k. Throws ResourceError when the count exceeds the
/// budget and sampling is not allowed.
TNCertificate is_totally_nonnegative(const DenseMatrix& m, std::size_t k, const TnOptions& opts);
TNCertificate is_totally_nonnegative(const DenseMatrix& m, std::size_t k, double tol = 1e-9);

/// Checks the minors of exactly one order (e.g. the entries of the j-th
/// compound) with the same conventions.
TNCertificate check_minors_of_order(const DenseMatrix& m, std::size_t j, const TnOptions& opts);

/// `count` random order-j minors with uniformly drawn row and column subsets.
/// Reports the most negative minor seen when any violates.
TNCertificate sample_minors(const DenseMatrix& m, std::size_t j, std::size_t count, std::uint64_t seed, double tol);

/// Order 1: A >= 0 entrywise. Order 2: A ^ A >= 0 entrywise.
std::pair<TNCertificate, TNCertificate> is_two_totally_nonnegative(const DenseMatrix& m, const TnOptions& opts);
std::pair<TNCertificate, TNCertificate> is_two_totally_nonnegative(const DenseMatrix& m, double tol = 1e-9);

/// Sign changes after discarding entries with |v_i| <= tol * max |v|.
/// strict_count is empty when every entry is discarded.
struct SignChangeCount {
  std::optional<std::size_t> strict_count;
  std::size_t vector_length = 0;
  std::size_t zero_count = 0;

  bool operator==(const SignChangeCount&) const = default;
};

SignChangeCount sign_changes(std::span<const double> v, double tol = 1e-9);

/// Product of `factors` Loewner-Whitney factors: a positive diagonal matrix
/// first, then elementary bidiagonal matrices I + c E_{i,i+1} or I + c E_{i+1,i}
/// with c > 0. Totally nonnegative by construction.
DenseMatrix random_tn(std::size_t n, std::uint64_t seed, std::size_t factors);

/// Oscillatory matrix: a positive tridiagonal TN matrix times random_tn output,
/// accepted once it is TN to order n, det > 0 and (I + m)^(n-1) > 0. Retries with
/// derived seeds; throws NumericalError after 100 failures.
DenseMatrix random_oscillatory(std::size_t n, std::uint64_t seed);

/// The acceptance test applied by random_oscillatory.
bool is_oscillatory(const DenseMatrix& m, double tol = 1e-10);

}  // namespace wedge
