#pragma once

#include <cstdint>
#include <vector>

#include "dpcpd/laplace.hpp"
#include "dpcpd/types.hpp"

namespace dpcpd {

/// Pre-noise answers of a query family sharing one sensitivity bound.
struct QueryAnswers {
  std::vector<double> values;
  double sensitivity = 0.0;
};

/// ReportMax: returns the 1-based index of the noisily largest answer, adding
/// Lap(noise_multiplier * sensitivity / epsilon) to each value. Multiplier 1
/// gives the classic mechanism; 2 is required when the queried statistic is
/// non-monotonic in the changed entry. epsilon = infinity adds no noise and
/// breaks ties by lowest index. If noisy_out is non-null it receives the
/// noisy values (one per answer).
std::size_t report_max(const QueryAnswers& answers, double epsilon,
                       double noise_multiplier, LaplaceSampler& sampler,
                       std::vector<double>* noisy_out = nullptr);

enum class ThresholdOutcome { Top, Bottom };

/// AboveThreshold (sparse vector): compares a stream of answers against a
/// noisy threshold drawn once, halting at the first noisy exceedance. With
/// epsilon = infinity the comparison is exact.
class AboveThreshold {
 public:
  /// Draws the noisy threshold T + Lap(2*delta/epsilon).
  AboveThreshold(double threshold, double delta, double epsilon,
                 LaplaceSampler& sampler);

  /// One comparison: Top iff answer + Lap(4*delta/epsilon) > noisy threshold.
  /// Throws HaltedError once Top has been returned.
  ThresholdOutcome step(double answer, LaplaceSampler& sampler);

  bool halted() const noexcept { return halted_; }
  double noisy_threshold() const noexcept { return noisy_threshold_; }

 private:
  double delta_;
  double epsilon_;
  double noisy_threshold_;
  bool halted_ = false;
};

/// Free-function form of AboveThreshold::step.
ThresholdOutcome above_threshold_step(AboveThreshold& state, double answer,
                                      LaplaceSampler& sampler);

}  // namespace dpcpd
