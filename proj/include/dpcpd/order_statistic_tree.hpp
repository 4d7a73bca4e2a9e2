#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace dpcpd {

/// Treap-based multiset of doubles with order-statistic queries. Duplicate
/// values share one node with a multiplicity count; freed nodes are recycled
/// through a free list so a sliding window allocates only during warmup.
class OrderStatisticTree {
 public:
  OrderStatisticTree() = default;

  std::int64_t size() const noexcept {
    return root_ == kNil ? 0 : pool_[root_].subtree;
  }

  void insert(double x) {
    std::uint32_t left = kNil, mid = kNil, right = kNil;
    split_less(root_, x, &left, &mid);
    split_leq(mid, x, &mid, &right);
    if (mid == kNil) {
      mid = new_node(x);
    } else {
      ++pool_[mid].count;
      pull(mid);
    }
    root_ = merge(merge(left, mid), right);
  }

  /// Removes one occurrence of x; throws std::out_of_range if absent.
  void erase(double x) {
    std::uint32_t left = kNil, mid = kNil, right = kNil;
    split_less(root_, x, &left, &mid);
    split_leq(mid, x, &mid, &right);
    if (mid == kNil) {
      root_ = merge(left, right);
      throw std::out_of_range("OrderStatisticTree::erase value not present");
    }
    if (pool_[mid].count > 1) {
      --pool_[mid].count;
      pull(mid);
    } else {
      release(mid);
      mid = kNil;
    }
    root_ = merge(merge(left, mid), right);
  }

  /// Number of stored elements strictly less than x.
  std::int64_t count_less(double x) const {
    std::int64_t acc = 0;
    std::uint32_t id = root_;
    while (id != kNil) {
      const Node& node = pool_[id];
      if (x <= node.key) {
        id = node.left;
      } else {
        acc += subtree(node.left) + node.count;
        id = node.right;
      }
    }
    return acc;
  }

  /// Number of stored elements strictly greater than x.
  std::int64_t count_greater(double x) const {
    std::int64_t acc = 0;
    std::uint32_t id = root_;
    while (id != kNil) {
      const Node& node = pool_[id];
      if (x >= node.key) {
        id = node.right;
      } else {
        acc += subtree(node.right) + node.count;
        id = node.left;
      }
    }
    return acc;
  }

 private:
  static constexpr std::uint32_t kNil = 0xffffffffu;

  struct Node {
    double key = 0.0;
    std::uint64_t prio = 0;
    std::uint32_t left = kNil;
    std::uint32_t right = kNil;
    std::int64_t count = 1;
    std::int64_t subtree = 1;
  };

  std::int64_t subtree(std::uint32_t id) const {
    return id == kNil ? 0 : pool_[id].subtree;
  }

  void pull(std::uint32_t id) {
    Node& node = pool_[id];
    node.subtree = node.count + subtree(node.left) + subtree(node.right);
  }

  std::uint32_t new_node(double x) {
    std::uint32_t id;
    if (!free_.empty()) {
      id = free_.back();
      free_.pop_back();
    } else {
      id = static_cast<std::uint32_t>(pool_.size());
      pool_.emplace_back();
    }
    Node& node = pool_[id];
    node.key = x;
    node.prio = prio_rng_();
    node.left = kNil;
    node.right = kNil;
    node.count = 1;
    node.subtree = 1;
    return id;
  }

  void release(std::uint32_t id) { free_.push_back(id); }

  std::uint32_t merge(std::uint32_t a, std::uint32_t b) {
    if (a == kNil) return b;
    if (b == kNil) return a;
    if (pool_[a].prio >= pool_[b].prio) {
      pool_[a].right = merge(pool_[a].right, b);
      pull(a);
      return a;
    }
    pool_[b].left = merge(a, pool_[b].left);
    pull(b);
    return b;
  }

  // Splits into keys < x and keys >= x.
  void split_less(std::uint32_t id, double x, std::uint32_t* a, std::uint32_t* b) {
    if (id == kNil) {
      *a = kNil;
      *b = kNil;
      return;
    }
    if (pool_[id].key < x) {
      split_less(pool_[id].right, x, &pool_[id].right, b);
      *a = id;
    } else {
      split_less(pool_[id].left, x, a, &pool_[id].left);
      *b = id;
    }
    pull(id);
  }

  // Splits into keys <= x and keys > x.
  void split_leq(std::uint32_t id, double x, std::uint32_t* a, std::uint32_t* b) {
    if (id == kNil) {
      *a = kNil;
      *b = kNil;
      return;
    }
    if (pool_[id].key <= x) {
      split_leq(pool_[id].right, x, &pool_[id].right, b);
      *a = id;
    } else {
      split_leq(pool_[id].left, x, a, &pool_[id].left);
      *b = id;
    }
    pull(id);
  }

  std::vector<Node> pool_;
  std::vector<std::uint32_t> free_;
  std::uint32_t root_ = kNil;
  std::mt19937_64 prio_rng_{0x9e3779b97f4a7c15ull};
};

}  // namespace dpcpd
