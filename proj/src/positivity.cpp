#include "wedge/positivity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "wedge/compound.hpp"
#include "wedge/error.hpp"

namespace wedge {

namespace {

double order_threshold(const DenseMatrix& m, std::size_t j, double tol) {
  return -tol * std::pow(m.max_abs(), double(j));
}

std::size_t saturating_add(std::size_t a, std::size_t b) noexcept {
  return a > SIZE_MAX - b ? SIZE_MAX : a + b;
}

std::size_t saturating_square(std::size_t a) noexcept {
  return a != 0 && a > SIZE_MAX / a ? SIZE_MAX : a * a;
}

IndexSet random_index_set(Rng& rng, std::size_t n, std::size_t j) {
  // Partial Fisher-Yates, then sort.
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < j; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
  pool.resize(j);
  std::sort(pool.begin(), pool.end());
  return IndexSet(std::move(pool));
}

// Lexicographically first violating (row set, col set) of one order, or none.
struct OrderScan {
  bool violated = false;
  std::size_t row = 0, col = 0;
  double value = 0.0;
};

OrderScan scan_order(const DenseMatrix& m, const std::vector<IndexSet>& sets, double threshold) {
  const std::size_t dim = sets.size();
  const std::size_t k = sets.empty() ? 0 : sets[0].size();
  std::atomic<std::size_t> first_bad{SIZE_MAX};  // linear position row*dim + col
  const auto rows = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel
  {
    std::vector<double> block(k * k);
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
      const std::size_t base = std::size_t(r) * dim;
      if (base > first_bad.load(std::memory_order_relaxed)) continue;
      for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) block[a * k + b] = m(sets[r][a], sets[c][b]);
        if (determinant(block, k) < threshold) {
          std::size_t cur = first_bad.load(std::memory_order_relaxed);
          const std::size_t pos = base + c;
          while (pos < cur && !first_bad.compare_exchange_weak(cur, pos, std::memory_order_relaxed)) {
          }
          break;
        }
      }
    }
  }
  OrderScan out;
  const std::size_t pos = first_bad.load();
  if (pos != SIZE_MAX) {
    out.violated = true;
    out.row = pos / dim;
    out.col = pos % dim;
    out.value = minor(m, sets[out.row], sets[out.col]);
  }
  return out;
}

TNCertificate exhaustive(const DenseMatrix& m, std::size_t lo, std::size_t hi, double tol) {
  TNCertificate cert;
  cert.order_checked = hi;
  cert.tol = tol;
  cert.mode = CheckMode::exhaustive;
  for (std::size_t j = lo; j <= hi; ++j) {
    const auto sets = all_index_sets(m.size(), j);
    const OrderScan s = scan_order(m, sets, order_threshold(m, j, tol));
    if (s.violated) {
      cert.verdict = false;
      cert.witness = MinorWitness{sets[s.row], sets[s.col], s.value};
      cert.minors_evaluated += s.row * sets.size() + s.col + 1;
      return cert;
    }
    cert.minors_evaluated += sets.size() * sets.size();
  }
  return cert;
}

TNCertificate sampled(const DenseMatrix& m, std::size_t lo, std::size_t hi, const TnOptions& opts) {
  TNCertificate cert;
  cert.order_checked = hi;
  cert.tol = opts.tol;
  cert.mode = CheckMode::sampled;
  for (std::size_t j = lo; j <= hi; ++j) {
    const std::size_t total = saturating_square(binomial(m.size(), j));
    TNCertificate part = total <= opts.samples_per_order
                             ? exhaustive(m, j, j, opts.tol)
                             : sample_minors(m, j, opts.samples_per_order, derive_seed(opts.seed, j), opts.tol);
    cert.minors_evaluated += part.minors_evaluated;
    if (!part.verdict) {
      cert.verdict = false;
      cert.witness = std::move(part.witness);
      return cert;
    }
  }
  return cert;
}

TNCertificate check_range(const DenseMatrix& m, std::size_t lo, std::size_t hi, const TnOptions& opts) {
  if (!(opts.tol >= 0.0)) throw ValidationError("tolerance must be nonnegative");
  const std::size_t count = minor_count(m.size(), lo, hi);
  if (count <= opts.budget) return exhaustive(m, lo, hi, opts.tol);
  if (!opts.allow_sampling)
    throw ResourceError("minor enumeration needs " + std::to_string(count) + " minors, over the budget of " +
                        std::to_string(opts.budget) + "; use a smaller order or enable sampling");
  return sampled(m, lo, hi, opts);
}

}  // namespace

std::size_t minor_count(std::size_t n, std::size_t lo, std::size_t hi) noexcept {
  std::size_t total = 0;
  for (std::size_t j = lo; j <= hi; ++j) total = saturating_add(total, saturating_square(binomial(n, j)));
  return total;
}

TNCertificate is_totally_nonnegative(const DenseMatrix& m, std::size_t k, const TnOptions& opts) {
  if (k < 1 || k > m.size())
    throw ValidationError("is_totally_nonnegative: order " + std::to_string(k) + " outside 1.." + std::to_string(m.size()));
  return check_range(m, 1, k, opts);
}

TNCertificate is_totally_nonnegative(const DenseMatrix& m, std::size_t k, double tol) {
  TnOptions opts;
  opts.tol = tol;
  return is_totally_nonnegative(m, k, opts);
}

TNCertificate check_minors_of_order(const DenseMatrix& m, std::size_t j, const TnOptions& opts) {
  if (j < 1 || j > m.size()) throw ValidationError("check_minors_of_order: order out of range");
  return check_range(m, j, j, opts);
}

TNCertificate sample_minors(const DenseMatrix& m, std::size_t j, std::size_t count, std::uint64_t seed, double tol) {
  const std::size_t n = m.size();
  if (j < 1 || j > n) throw ValidationError("sample_minors: order out of range");
  TNCertificate cert;
  cert.order_checked = j;
  cert.mode = CheckMode::sampled;
  cert.tol = tol;
  const double threshold = order_threshold(m, j, tol);
  Rng rng(seed);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < count; ++t) {
    IndexSet rows = random_index_set(rng, n, j);
    IndexSet cols = random_index_set(rng, n, j);
    const double v = minor(m, rows, cols);
    ++cert.minors_evaluated;
    if (v < threshold && v < worst) {
      worst = v;
      cert.verdict = false;
      cert.witness = MinorWitness{std::move(rows), std::move(cols), v};
    }
  }
  return cert;
}

std::pair<TNCertificate, TNCertificate> is_two_totally_nonnegative(const DenseMatrix& m, const TnOptions& opts) {
  if (m.size() < 2) throw ValidationError("is_two_totally_nonnegative: dimension must be at least 2");
  return {check_minors_of_order(m, 1, opts), check_minors_of_order(m, 2, opts)};
}

std::pair<TNCertificate, TNCertificate> is_two_totally_nonnegative(const DenseMatrix& m, double tol) {
  TnOptions opts;
  opts.tol = tol;
  return is_two_totally_nonnegative(m, opts);
}

SignChangeCount sign_changes(std::span<const double> v, double tol) {
  if (v.empty()) throw ValidationError("sign_changes: empty vector");
  SignChangeCount out;
  out.vector_length = v.size();
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  const double cut = tol * vmax;
  int last = 0;
  std::size_t flips = 0;
  for (double x : v) {
    if (std::abs(x) <= cut) {
      ++out.zero_count;
      continue;
    }
    const int s = x > 0 ? 1 : -1;
    if (last != 0 && s != last) ++flips;
    last = s;
  }
  if (last != 0) out.strict_count = flips;
  return out;
}

DenseMatrix random_tn(std::size_t n, std::uint64_t seed, std::size_t factors) {
  if (n < 1) throw ValidationError("random_tn: n must be at least 1");
  if (factors < 1) throw ValidationError("random_tn: at least one factor is required");
  Rng rng(seed);
  std::vector<double> d(n);
  for (auto& x : d) x = rng.uniform(0.5, 2.0);
  DenseMatrix m = DenseMatrix::diagonal(d);
  for (std::size_t f = 1; f < factors; ++f) {
    if (n == 1) {
      m(0, 0) *= rng.uniform(0.5, 2.0);
      continue;
    }
    const std::size_t i = rng.below(n - 1);
    const bool upper = rng.below(2) == 1;
    const double c = rng.uniform(0.05, 1.0);
    // Left-multiplying by I + c E_{i,i+1} adds c * row i+1 to row i;
    // by I + c E_{i+1,i} adds c * row i to row i+1.
    const std::size_t dst = upper ? i : i + 1;
    const std::size_t src = upper ? i + 1 : i;
    for (std::size_t col = 0; col < n; ++col) m(dst, col) += c * m(src, col);
  }
  return m;
}

bool is_oscillatory(const DenseMatrix& m, double tol) {
  const std::size_t n = m.size();
  TnOptions opts;
  opts.tol = tol;
  opts.allow_sampling = true;
  opts.seed = 0x05c111a7;
  if (!is_totally_nonnegative(m, n, opts).verdict) return false;
  if (!(determinant(m.entries(), n) > 0.0)) return false;
  DenseMatrix shifted = m + DenseMatrix::identity(n);
  DenseMatrix power = DenseMatrix::identity(n);
  for (std::size_t p = 0; p + 1 < n; ++p) power = power * shifted;
  return power.min_entry() > 0.0;
}

DenseMatrix random_oscillatory(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw ValidationError("random_oscillatory: n must be at least 2");
  constexpr std::size_t kMaxRetries = 100;
  for (std::size_t attempt = 0; attempt < kMaxRetries; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : derive_seed(seed, attempt);
    Rng rng(derive_seed(s, 0x7d));
    DenseMatrix tri(n);
    for (std::size_t i = 0; i < n; ++i) tri(i, i) = rng.uniform(1.5, 2.5);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      tri(i, i + 1) = rng.uniform(0.2, 0.6);
      tri(i + 1, i) = rng.uniform(0.2, 0.6);
    }
    DenseMatrix m = tri * random_tn(n, s, 3 * n);
    if (is_oscillatory(m)) return m;
  }
  throw NumericalError("random_oscillatory: no oscillatory draw accepted after 100 retries (n=" + std::to_string(n) +
                       ", seed=" + std::to_string(seed) + ")");
}

}  // namespace wedge
