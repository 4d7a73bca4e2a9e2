#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "dpcpd/drift.hpp"
#include "dpcpd/online.hpp"
#include "dpcpd/types.hpp"

namespace dpcpd {

enum class DetectorKind { NonPrivate, Pncpd, OnlinePncpd, Drift };

/// One Monte Carlo experiment: a data model, a detector, and a trial count.
/// Offline detectors read cfg; OnlinePncpd reads online_cfg and uses the
/// change-point model's n as the stream length. Drift uses the drift model
/// and maps errors to the original time scale.
struct ExperimentSpec {
  DetectorKind detector = DetectorKind::Pncpd;
  std::variant<ChangePointModelParams, DriftModelParams> model;
  DetectionConfig cfg;
  std::optional<OnlineConfig> online_cfg;
  std::size_t trials = 1;
  std::uint64_t base_seed = 0;
};

/// Raw outcome of one trial.
struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool detected = false;     ///< a change-point index was produced
  std::size_t k_tilde = 0;   ///< 1-based estimate; 0 when !detected
  std::size_t trigger_k = 0; ///< online trigger center; 0 = never triggered
  bool false_alarm = false;  ///< online: triggered on a window missing k*
  std::int64_t error = 0;    ///< k_tilde - true change time; valid if detected
};

/// Empirical beta(alpha) = Pr[|k_tilde - k*| > alpha] for alpha = 0..n.
/// Undetected trials count as error at every alpha.
struct AccuracyCurve {
  std::vector<std::size_t> alphas;
  std::vector<double> betas;
};

struct ExperimentResult {
  AccuracyCurve curve;
  std::vector<TrialRecord> trials;
  double false_alarm_rate = 0.0;  ///< online detectors only
  double miss_rate = 0.0;         ///< online: fraction with no trigger
};

/// Draws one series from the i.i.d. change-point model. Deterministic per
/// seed.
TimeSeries generate_changepoint(const ChangePointModelParams& params,
                                std::uint64_t seed);

/// Runs the experiment; trials are independent (per-trial counter-mixed
/// seeds) and may execute on up to `jobs` worker threads without changing
/// the result.
ExperimentResult run_experiment(const ExperimentSpec& spec, std::size_t jobs = 1);

/// Separation probability a = Pr[x0 > x1] with a standard error when
/// estimated by Monte Carlo (10^6 paired draws; exact=true marks the
/// Gaussian closed form, where the standard error is 0).
struct SeparationEstimate {
  double a = 0.5;
  double std_error = 0.0;
  bool exact = false;
};

SeparationEstimate separation_probability_detail(const DistributionSpec& pre,
                                                 const DistributionSpec& post,
                                                 std::uint64_t seed = 0);

double separation_probability(const DistributionSpec& pre,
                              const DistributionSpec& post);

}  // namespace dpcpd
