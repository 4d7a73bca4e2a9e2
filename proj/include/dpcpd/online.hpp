#pragma once

#include <cstdint>
#include <optional>

#include "dpcpd/mechanisms.hpp"
#include "dpcpd/rank_stats.hpp"
#include "dpcpd/types.hpp"

namespace dpcpd {

/// Configuration for the streaming detector.
struct OnlineConfig {
  std::size_t n = 4;        ///< window size (even, >= 4)
  double epsilon = 1.0;     ///< total privacy budget; infinity = non-private
  double gamma = 0.1;       ///< constraint parameter, in (0, 1/4) online
  double threshold = 0.5;   ///< raw threshold T for the scan statistic
  std::optional<std::uint64_t> seed;
};

enum class OnlinePhase { Warmup, Scanning, Waiting, Done };

/// Outcome of one pushed point.
struct OnlineEvent {
  enum class Kind { NeedMoreData, Scanned, Triggered, Result } kind =
      Kind::NeedMoreData;
  /// Scanned/Triggered: the window-center stream index k the scan refers to
  /// (the window spans global indices k-n/2+1 .. k+n/2, 1-based).
  std::size_t k = 0;
  std::optional<DetectionResult> result;  ///< set for Kind::Result
};

/// OnlinePNCPD: AboveThreshold over the sliding U statistic with budget
/// epsilon/2, then a gamma*n-point wait and one finishing PNCPD call with the
/// remaining epsilon/2. The result index is on the global stream scale.
/// The scan maximizes U, so the caller arranges a > 1/2 (negate the stream
/// otherwise).
class OnlineDetector {
 public:
  explicit OnlineDetector(const OnlineConfig& cfg);

  /// Feeds one point. Throws StateError after the Result has been produced.
  OnlineEvent push(double x);

  OnlinePhase phase() const noexcept { return phase_; }
  std::size_t stream_index() const noexcept { return pushed_; }
  std::size_t trigger_k() const noexcept { return trigger_k_; }
  const std::optional<DetectionResult>& result() const noexcept {
    return result_;
  }
  double noisy_threshold() const noexcept { return mechanism_.noisy_threshold(); }

 private:
  OnlineEvent finish();

  OnlineConfig cfg_;
  LaplaceSampler sampler_;
  WindowStatEngine engine_;
  AboveThreshold mechanism_;
  OnlinePhase phase_ = OnlinePhase::Warmup;
  std::size_t pushed_ = 0;
  std::size_t wait_remaining_ = 0;
  std::size_t trigger_k_ = 0;
  std::optional<DetectionResult> result_;
};

/// Admissible threshold interval for the scan, from the concentration
/// analysis of the window statistic.
struct ThresholdBounds {
  double t_lower = 0.0;
  double t_upper = 0.0;
  bool feasible = false;  ///< t_lower < t_upper
};

/// Computes [T_L, T_U] for window size n, anticipated change time k*,
/// separation probability a in (1/2,1), and failure probability beta:
///   T_L = 1/2 + sqrt((2/n) ln(8(k*-n/2)/beta)) + 32 ln((k*-n/2)/beta)/(n eps)
///   T_U = a  - sqrt((2/n) ln(8/beta))          - 32 ln(8(k*-n/2)/beta)/(n eps)
/// epsilon = infinity zeroes both 1/epsilon terms. Throws DomainError unless
/// k* > n/2 and the parameter domains hold.
ThresholdBounds threshold_bounds(std::size_t n, double k_star_estimate,
                                 double a, double beta, double epsilon);

/// Smallest even n (at least 4) exceeding
/// (1/(a-1/2)^2) (sqrt(2 ln(8k*/beta)) + sqrt(2 ln(8/beta)) + (64/eps) ln(8k*/beta))^2.
std::size_t min_window_size(double a, double k_star_estimate, double beta,
                            double epsilon);

}  // namespace dpcpd
