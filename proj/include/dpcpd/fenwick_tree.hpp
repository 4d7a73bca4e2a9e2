#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dpcpd {

/// Binary indexed tree over positions 1..n holding integer counts.
class FenwickTree {
 public:
  explicit FenwickTree(std::size_t n) : n_(n), tree_(n + 1, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::int64_t total() const noexcept { return total_; }

  void add(std::size_t i, std::int64_t delta) {
    if (i < 1 || i > n_) throw std::out_of_range("FenwickTree::add index");
    total_ += delta;
    for (; i <= n_; i += i & (~i + 1)) tree_[i] += delta;
  }

  /// Sum of counts at positions 1..i (i = 0 gives 0).
  std::int64_t prefix(std::size_t i) const {
    if (i > n_) throw std::out_of_range("FenwickTree::prefix index");
    std::int64_t sum = 0;
    for (; i > 0; i -= i & (~i + 1)) sum += tree_[i];
    return sum;
  }

  /// Count of stored items at positions strictly below i.
  std::int64_t count_below(std::size_t i) const { return prefix(i - 1); }

  /// Count of stored items at positions strictly above i.
  std::int64_t count_above(std::size_t i) const { return total_ - prefix(i); }

 private:
  std::size_t n_;
  std::int64_t total_ = 0;
  std::vector<std::int64_t> tree_;
};

}  // namespace dpcpd
