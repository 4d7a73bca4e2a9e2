#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "dpcpd/fenwick_tree.hpp"
#include "dpcpd/order_statistic_tree.hpp"
#include "dpcpd/types.hpp"

namespace dpcpd {

/// Mann-Whitney change-point statistic at cut k:
/// V(k) = sum_{j=k+1..n} sum_{i=1..k} I(x_i > x_j) / (k(n-k)), I strict.
/// The numerator is kept as an exact integer; division happens at the edge.
struct VStat {
  std::size_t k = 0;
  std::int64_t numerator = 0;
  double value = 0.0;
};

/// Exact cross-cut inversion count by double loop. Throws IndexError unless
/// 1 <= k <= n-1.
std::int64_t v_numerator_bruteforce(const TimeSeries& series, std::size_t k);

/// V(k) by brute force.
double v_stat_bruteforce(const TimeSeries& series, std::size_t k);

/// V(k) for every k in {ceil(gamma*n), ..., floor((1-gamma)*n)} in O(n log n)
/// via the incremental engine. Throws ConfigError on invalid gamma and
/// IndexError on an empty candidate range.
std::vector<VStat> v_stats_all(const TimeSeries& series, double gamma);

/// Sliding-window statistic U = (4/n^2) * cross-pair count between the two
/// halves of an even-length window; equals V(window, n/2). Throws LengthError
/// on odd length.
double u_stat_bruteforce(const TimeSeries& window);

/// Sensitivity of V over the gamma-constrained range: 1/(gamma*n).
double sensitivity_offline(double gamma, std::size_t n);

/// Sensitivity of U for an even window of size n: 2/n.
double sensitivity_window(std::size_t n);

/// Incremental left-to-right sweep over all cuts of a fixed series. Maintains
/// the numerator N(k) exactly using prefix counts over compressed ranks:
/// N(k+1) = N(k) - #{i<=k : x_i > x_{k+1}} + #{j>k+1 : x_{k+1} > x_j}.
class OfflineStatEngine {
 public:
  explicit OfflineStatEngine(const TimeSeries& series);

  std::size_t k() const noexcept { return k_; }
  std::int64_t numerator() const noexcept { return numerator_; }
  double value() const;

  /// Moves the cut from k to k+1. Throws IndexError at k = n-1.
  void advance();

 private:
  std::vector<double> values_;
  std::vector<std::size_t> ranks_;
  FenwickTree left_;
  FenwickTree right_;
  std::size_t k_ = 0;
  std::int64_t numerator_ = 0;
};

/// Sliding window over the most recent n points (n even), maintaining the
/// cross-pair numerator between the older and newer halves in O(log n) per
/// push via two order-statistic multisets.
class WindowStatEngine {
 public:
  explicit WindowStatEngine(std::size_t n);

  std::size_t capacity() const noexcept { return n_; }
  bool warmed_up() const noexcept { return warm_; }
  std::size_t absorbed() const noexcept { return buffer_.size(); }

  /// Absorbs one point during warmup. Throws StateError once warmed up.
  void add_warmup(double x);

  /// Slides the window by one point and returns the new U. Throws StateError
  /// before warmup completes.
  double push(double x);

  double u_value() const;            ///< U of the current window
  std::int64_t numerator() const;    ///< exact cross-pair count
  std::vector<double> window() const;  ///< oldest to newest

 private:
  std::size_t n_;
  std::deque<double> buffer_;
  OrderStatisticTree left_;
  OrderStatisticTree right_;
  std::int64_t cross_ = 0;
  bool warm_ = false;
};

/// Free-function form of WindowStatEngine::push.
double window_push(WindowStatEngine& engine, double x);

}  // namespace dpcpd
