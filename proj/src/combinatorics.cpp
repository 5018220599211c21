#include "wedge/combinatorics.hpp"

#include <limits>
#include <string>

#include "wedge/error.hpp"

namespace wedge {

IndexSet::IndexSet(std::initializer_list<std::size_t> idx) : IndexSet(std::vector<std::size_t>(idx)) {}

IndexSet::IndexSet(std::vector<std::size_t> idx) : idx_(std::move(idx)) {
  for (std::size_t k = 1; k < idx_.size(); ++k)
    if (idx_[k] <= idx_[k - 1]) throw ValidationError("index set must be strictly increasing");
}

void IndexSet::check_bound(std::size_t n) const {
  for (auto i : idx_)
    if (i >= n) throw ValidationError("index " + std::to_string(i) + " out of range for dimension " + std::to_string(n));
}

std::size_t binomial(std::size_t n, std::size_t k) noexcept {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i is exact at every step.
    const std::size_t f = n - k + i;
    if (r > kMax / f) return kMax;
    r = r * f / i;
  }
  return r;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) noexcept {
  const std::size_t k = c.size();
  for (std::size_t p = k; p-- > 0;) {
    if (c[p] < n - k + p) {
      ++c[p];
      for (std::size_t q = p + 1; q < k; ++q) c[q] = c[q - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<IndexSet> all_index_sets(std::size_t n, std::size_t k) {
  std::vector<IndexSet> out;
  if (k == 0 || k > n) return out;
  out.reserve(binomial(n, k));
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  do {
    out.emplace_back(c);
  } while (next_combination(c, n));
  return out;
}

PairBasis::PairBasis(std::size_t n) : n_(n) {
  if (n < 2) throw ValidationError("pair basis needs dimension >= 2");
  pairs_.reserve(size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs_.emplace_back(i, j);
}

std::size_t PairBasis::index_of(std::size_t i, std::size_t j) const {
  if (!(i < j && j < n_)) throw ValidationError("pair (" + std::to_string(i) + ", " + std::to_string(j) + ") not in basis");
  return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> PairBasis::pair_at(std::size_t k) const {
  if (k >= pairs_.size()) throw ValidationError("pair index out of range");
  return pairs_[k];
}

}  // namespace wedge
