#pragma once

#include <cstdint>

#include "dpcpd/laplace.hpp"
#include "dpcpd/online.hpp"
#include "dpcpd/types.hpp"

namespace dpcpd {

/// Piecewise-linear drift model: x_t = mu_t + e_t with
///   mu_t = eta - (t*-t) xi0  for t <= t*,
///   mu_t = eta + (t-t*) xi1  for t >  t*.
struct DriftModelParams {
  double eta = 0.0;
  double xi0 = 0.0;
  double xi1 = 0.0;
  std::size_t t_star = 1;
  DistributionSpec noise = DistributionSpec::gaussian(0.0, 1.0);
  std::size_t n = 4;  ///< even
};

/// Optional strictly monotone inverse transform applied elementwise before
/// pair-differencing, for models observed through f: identity, log (model
/// x = exp(mu+e)), exp (model x = log(mu+e)), or an odd-integer root (model
/// x = (mu+e)^power).
struct DriftTransform {
  enum class Kind { Identity, Log, Exp, OddRoot };

  Kind kind = Kind::Identity;
  int power = 1;  ///< odd positive; used by OddRoot only

  static DriftTransform identity() { return DriftTransform{}; }
  static DriftTransform log_inverse() { return DriftTransform{Kind::Log, 1}; }
  static DriftTransform exp_inverse() { return DriftTransform{Kind::Exp, 1}; }
  static DriftTransform odd_root(int power);

  /// Applies the inverse transform. Throws DomainError for Log on
  /// non-positive input.
  double apply(double x) const;
};

/// Consecutive pair differences y_t = x_{2t} - x_{2t-1} (after the optional
/// inverse transform), halving the length. Throws LengthError unless the
/// input length is even and at least 4.
TimeSeries pair_difference(const TimeSeries& series,
                           const DriftTransform& transform = DriftTransform::identity());

/// Drift change detection: PNCPD on the pair-differenced series, mapped back
/// to the original time scale as t_hat = 2t - 1. Choose ArgMax when
/// xi0 > xi1 and ArgMin when xi0 < xi1. Collected noisy_scores stay on the
/// reduced (pair-index) scale.
DetectionResult detect_drift(const TimeSeries& series, const DetectionConfig& cfg,
                             const DriftTransform& transform = DriftTransform::identity(),
                             bool collect_noisy_scores = false);

/// Same, drawing noise from an externally owned sampler (cfg.seed ignored).
DetectionResult detect_drift(const TimeSeries& series, const DetectionConfig& cfg,
                             LaplaceSampler& sampler,
                             const DriftTransform& transform = DriftTransform::identity(),
                             bool collect_noisy_scores = false);

/// Draws one series from the drift model. Deterministic per seed.
TimeSeries generate_drift(const DriftModelParams& params, std::uint64_t seed);

/// Streaming drift detection: buffers pushes into consecutive pairs, feeds
/// the differences to an OnlinePNCPD instance whose window size cfg.n counts
/// reduced (pair) samples, and maps Triggered/Result indices back to the
/// original time scale as 2k - 1.
class OnlineDriftDetector {
 public:
  explicit OnlineDriftDetector(const OnlineConfig& cfg,
                               const DriftTransform& transform = DriftTransform::identity());

  OnlineEvent push(double x);

  OnlinePhase phase() const noexcept { return inner_.phase(); }
  const std::optional<DetectionResult>& result() const noexcept {
    return result_;
  }

 private:
  OnlineDetector inner_;
  DriftTransform transform_;
  bool have_first_ = false;
  double first_ = 0.0;
  std::optional<DetectionResult> result_;
};

}  // namespace dpcpd
