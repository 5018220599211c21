#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace wedge {

/// Strictly increasing list of row or column indices.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<std::size_t> idx);
  explicit IndexSet(std::vector<std::size_t> idx);

  std::size_t size() const noexcept { return idx_.size(); }
  std::size_t operator[](std::size_t k) const noexcept { return idx_[k]; }
  const std::vector<std::size_t>& indices() const noexcept { return idx_; }
  auto begin() const noexcept { return idx_.begin(); }
  auto end() const noexcept { return idx_.end(); }

  /// Throws ValidationError unless every index is < n.
  void check_bound(std::size_t n) const;

  bool operator==(const IndexSet&) const = default;

 private:
  std::vector<std::size_t> idx_;
};

/// C(n, k); saturates at SIZE_MAX on overflow.
std::size_t binomial(std::size_t n, std::size_t k) noexcept;

/// Advances a strictly increasing k-subset of {0..n-1} to its lexicographic
/// successor. Returns false (leaving c untouched) after the last subset.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) noexcept;

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<IndexSet> all_index_sets(std::size_t n, std::size_t k);

/// Lexicographically ordered pairs (i, j), 0 <= i < j < n: the discrete half of
/// the product square lying strictly above the diagonal.
class PairBasis {
 public:
  explicit PairBasis(std::size_t n);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_ * (n_ - 1) / 2; }

  std::size_t index_of(std::size_t i, std::size_t j) const;
  std::pair<std::size_t, std::size_t> pair_at(std::size_t k) const;
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const noexcept { return pairs_; }

 private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

}  // namespace wedge
