#include "dpcpd/offline.hpp"

#include <cmath>
#include <limits>

#include "dpcpd/mechanisms.hpp"
#include "dpcpd/rank_stats.hpp"

namespace dpcpd {

namespace {

// Compares V at two cuts exactly: numerator/denominator cross products fit
// __int128 for any realistic n (numerators and denominators are < n^2).
int compare_stats(const VStat& lhs, const VStat& rhs, std::size_t n) {
  const auto denom = [n](const VStat& s) {
    return static_cast<__int128>(s.k) * static_cast<__int128>(n - s.k);
  };
  const __int128 left = static_cast<__int128>(lhs.numerator) * denom(rhs);
  const __int128 right = static_cast<__int128>(rhs.numerator) * denom(lhs);
  if (left < right) return -1;
  if (left > right) return 1;
  return 0;
}

void check_bound_inputs(const AccuracyBoundInputs& inputs) {
  if (!(inputs.a > 0.5) || !(inputs.a < 1.0)) {
    throw DomainError("separation probability a must lie in (1/2, 1)");
  }
  if (std::isnan(inputs.gamma) || inputs.gamma <= 0.0 || inputs.gamma >= 0.5) {
    throw DomainError("gamma must lie in (0, 1/2)");
  }
  if (!(inputs.beta > 0.0) || !(inputs.beta < 1.0)) {
    throw DomainError("beta must lie in (0, 1)");
  }
}

// ln(1/(1 - exp(-x))) for x > 0, stable for tiny x.
double log_inverse_gap(double x) { return -std::log(-std::expm1(-x)); }

}  // namespace

DetectionResult detect_nonprivate(const TimeSeries& series, double gamma,
                                  Direction direction) {
  DetectionConfig probe;
  probe.epsilon = std::numeric_limits<double>::infinity();
  probe.gamma = gamma;
  probe.direction = direction;
  validate_config(probe, series.size(), false);

  const std::vector<VStat> stats = v_stats_all(series, gamma);
  const std::size_t n = series.size();
  std::size_t best = 0;
  for (std::size_t i = 1; i < stats.size(); ++i) {
    const int cmp = compare_stats(stats[i], stats[best], n);
    const bool better =
        direction == Direction::ArgMax ? cmp > 0 : cmp < 0;
    if (better) best = i;
  }
  return DetectionResult{stats[best].k, std::nullopt};
}

DetectionResult detect_pncpd(const TimeSeries& series,
                             const DetectionConfig& cfg,
                             bool collect_noisy_scores) {
  LaplaceSampler sampler =
      cfg.seed ? LaplaceSampler(*cfg.seed) : LaplaceSampler::from_entropy();
  return detect_pncpd(series, cfg, sampler, collect_noisy_scores);
}

DetectionResult detect_pncpd(const TimeSeries& series,
                             const DetectionConfig& cfg,
                             LaplaceSampler& sampler,
                             bool collect_noisy_scores) {
  validate_config(cfg, series.size(), false);
  const std::vector<VStat> stats = v_stats_all(series, cfg.gamma);
  const bool negate = cfg.direction == Direction::ArgMin;

  QueryAnswers answers;
  answers.sensitivity = sensitivity_offline(cfg.gamma, series.size());
  answers.values.reserve(stats.size());
  for (const VStat& stat : stats) {
    answers.values.push_back(negate ? -stat.value : stat.value);
  }

  std::vector<double> noisy;
  const std::size_t index =
      report_max(answers, cfg.epsilon, 2.0, sampler,
                 collect_noisy_scores ? &noisy : nullptr);

  DetectionResult result;
  result.k_hat = stats[index - 1].k;
  if (collect_noisy_scores) {
    std::vector<NoisyScore> scores;
    scores.reserve(stats.size());
    for (std::size_t i = 0; i < stats.size(); ++i) {
      // Report in the orientation of V itself: for ArgMin the selected index
      // is the argmin of the reported noisy column.
      scores.push_back(NoisyScore{stats[i].k, stats[i].value,
                                  negate ? -noisy[i] : noisy[i]});
    }
    result.noisy_scores = std::move(scores);
  }
  return result;
}

double accuracy_bound_nonprivate(const AccuracyBoundInputs& inputs) {
  check_bound_inputs(inputs);
  const double s = inputs.a - 0.5;
  const double g = std::pow(inputs.gamma, 4) * s * s;
  return 13.0 / (2.0 * g) *
         (std::log(2.0 / inputs.beta) + log_inverse_gap(2.0 * g / 13.0));
}

double accuracy_bound_private(const AccuracyBoundInputs& inputs) {
  check_bound_inputs(inputs);
  if (std::isnan(inputs.epsilon) || inputs.epsilon <= 0.0) {
    throw DomainError("epsilon must be positive or infinity");
  }
  const double s = inputs.a - 0.5;
  const double g = std::pow(inputs.gamma, 4) * s * s;
  const double log_term = std::log(4.0 / inputs.beta);
  const double data_term = 26.0 / g * (log_term + log_inverse_gap(g / 26.0));
  const double e = inputs.epsilon * inputs.gamma * s;
  const double noise_term =
      std::isinf(inputs.epsilon)
          ? 0.0
          : 8.0 / e * (log_term + log_inverse_gap(e / 8.0));
  return std::max(data_term, noise_term);
}

}  // namespace dpcpd
