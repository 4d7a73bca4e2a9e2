#include "dpcpd/rank_stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dpcpd {

namespace {

std::vector<std::size_t> compressed_ranks(const std::vector<double>& values) {
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::size_t> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    ranks[i] = static_cast<std::size_t>(
                   std::lower_bound(sorted.begin(), sorted.end(), values[i]) -
                   sorted.begin()) +
               1;
  }
  return ranks;
}

void check_cut(std::size_t k, std::size_t n) {
  if (k < 1 || k > n - 1) {
    throw IndexError("cut index k must satisfy 1 <= k <= n-1, got k=" +
                     std::to_string(k) + " for n=" + std::to_string(n));
  }
}

}  // namespace

std::int64_t v_numerator_bruteforce(const TimeSeries& series, std::size_t k) {
  const std::size_t n = series.size();
  check_cut(k, n);
  std::int64_t count = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = k; j < n; ++j) {
      if (series[i] > series[j]) ++count;
    }
  }
  return count;
}

double v_stat_bruteforce(const TimeSeries& series, std::size_t k) {
  const std::size_t n = series.size();
  const std::int64_t numerator = v_numerator_bruteforce(series, k);
  const std::int64_t pairs =
      static_cast<std::int64_t>(k) * static_cast<std::int64_t>(n - k);
  return static_cast<double>(numerator) / static_cast<double>(pairs);
}

std::vector<VStat> v_stats_all(const TimeSeries& series, double gamma) {
  if (std::isnan(gamma) || gamma <= 0.0 || gamma >= 0.5) {
    throw ConfigError(ConfigError::Violation::GammaOutOfRange,
                      "gamma must lie in the open interval (0, 1/2)");
  }
  const std::size_t n = series.size();
  const CandidateRange range = candidate_range(gamma, n);
  if (range.empty()) {
    throw IndexError("candidate range is empty for gamma=" +
                     std::to_string(gamma) + ", n=" + std::to_string(n));
  }
  OfflineStatEngine engine(series);
  while (engine.k() < range.first) engine.advance();
  std::vector<VStat> stats;
  stats.reserve(range.count());
  for (;;) {
    stats.push_back(VStat{engine.k(), engine.numerator(), engine.value()});
    if (engine.k() == range.last) break;
    engine.advance();
  }
  return stats;
}

double u_stat_bruteforce(const TimeSeries& window) {
  const std::size_t n = window.size();
  if (n % 2 != 0) {
    throw LengthError("U statistic requires an even window, got n=" +
                      std::to_string(n));
  }
  return v_stat_bruteforce(window, n / 2);
}

double sensitivity_offline(double gamma, std::size_t n) {
  if (std::isnan(gamma) || gamma <= 0.0 || gamma >= 0.5) {
    throw ConfigError(ConfigError::Violation::GammaOutOfRange,
                      "gamma must lie in the open interval (0, 1/2)");
  }
  if (n < 2) {
    throw ConfigError(ConfigError::Violation::SeriesTooShort,
                      "sensitivity is defined for n >= 2");
  }
  return 1.0 / (gamma * static_cast<double>(n));
}

double sensitivity_window(std::size_t n) {
  if (n < 2 || n % 2 != 0) {
    throw LengthError("window sensitivity requires even n >= 2, got n=" +
                      std::to_string(n));
  }
  return 2.0 / static_cast<double>(n);
}

OfflineStatEngine::OfflineStatEngine(const TimeSeries& series)
    : values_(series.values()),
      ranks_(compressed_ranks(values_)),
      left_(*std::max_element(ranks_.begin(), ranks_.end())),
      right_(*std::max_element(ranks_.begin(), ranks_.end())) {
  for (std::size_t rank : ranks_) right_.add(rank, 1);
  advance();  // position at k = 1
}

double OfflineStatEngine::value() const {
  const std::size_t n = values_.size();
  const std::int64_t pairs =
      static_cast<std::int64_t>(k_) * static_cast<std::int64_t>(n - k_);
  return static_cast<double>(numerator_) / static_cast<double>(pairs);
}

void OfflineStatEngine::advance() {
  const std::size_t n = values_.size();
  if (k_ + 1 > n - 1) {
    throw IndexError("cannot advance past the last cut k=n-1");
  }
  const std::size_t rank = ranks_[k_];  // x_{k+1}, 0-based slot k_
  right_.add(rank, -1);
  const std::int64_t minus = left_.count_above(rank);
  const std::int64_t plus = right_.count_below(rank);
  numerator_ += plus - minus;
  left_.add(rank, 1);
  ++k_;
}

WindowStatEngine::WindowStatEngine(std::size_t n) : n_(n) {
  if (n < 2 || n % 2 != 0) {
    throw LengthError("window engine requires even n >= 2, got n=" +
                      std::to_string(n));
  }
}

void WindowStatEngine::add_warmup(double x) {
  if (warm_) {
    throw StateError("window engine is already warmed up; use push");
  }
  buffer_.push_back(x);
  if (buffer_.size() == n_) {
    const std::size_t half = n_ / 2;
    for (std::size_t j = half; j < n_; ++j) right_.insert(buffer_[j]);
    for (std::size_t i = 0; i < half; ++i) {
      cross_ += right_.count_less(buffer_[i]);
      left_.insert(buffer_[i]);
    }
    warm_ = true;
  }
}

double WindowStatEngine::push(double x) {
  if (!warm_) {
    throw StateError("window engine holds " + std::to_string(buffer_.size()) +
                     " of " + std::to_string(n_) + " warmup points");
  }
  const std::size_t half = n_ / 2;
  const double evicted = buffer_.front();
  buffer_.pop_front();
  const double mover = buffer_[half - 1];  // crosses from newer to older half

  cross_ -= right_.count_less(evicted);
  left_.erase(evicted);

  right_.erase(mover);
  cross_ -= left_.count_greater(mover);
  cross_ += right_.count_less(mover);
  left_.insert(mover);

  cross_ += left_.count_greater(x);
  right_.insert(x);
  buffer_.push_back(x);
  return u_value();
}

double WindowStatEngine::u_value() const {
  if (!warm_) throw StateError("window engine is not warmed up");
  return 4.0 * static_cast<double>(cross_) /
         (static_cast<double>(n_) * static_cast<double>(n_));
}

std::int64_t WindowStatEngine::numerator() const {
  if (!warm_) throw StateError("window engine is not warmed up");
  return cross_;
}

std::vector<double> WindowStatEngine::window() const {
  return std::vector<double>(buffer_.begin(), buffer_.end());
}

double window_push(WindowStatEngine& engine, double x) { return engine.push(x); }

}  // namespace dpcpd
