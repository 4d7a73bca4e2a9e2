#pragma once

#include "dpcpd/laplace.hpp"
#include "dpcpd/types.hpp"

namespace dpcpd {

/// Non-private baseline: the exact argmax (or argmin) of V(k) over the
/// gamma-constrained candidate range, with ties broken by lowest index.
/// Comparisons use exact integer cross-multiplication, never floating point.
DetectionResult detect_nonprivate(const TimeSeries& series, double gamma,
                                  Direction direction);

/// PNCPD: adds i.i.d. Lap(2/(epsilon*gamma*n)) to each V(k) (ArgMin negates
/// the statistic before the noise) and returns the noisy argmax. The noise
/// RNG is seeded from cfg.seed, or entropy when absent. When
/// collect_noisy_scores is set, the result carries (k, V(k), noisy V(k))
/// triples; releasing those consumes more privacy budget than the index
/// alone.
DetectionResult detect_pncpd(const TimeSeries& series,
                             const DetectionConfig& cfg,
                             bool collect_noisy_scores = false);

/// Same, drawing noise from an externally owned sampler (cfg.seed ignored).
DetectionResult detect_pncpd(const TimeSeries& series,
                             const DetectionConfig& cfg,
                             LaplaceSampler& sampler,
                             bool collect_noisy_scores = false);

/// Inputs for the advisory accuracy-bound calculators. a is the separation
/// probability Pr[x0 > x1] (reflect a < 1/2 to 1-a before calling).
struct AccuracyBoundInputs {
  double a = 0.75;
  double gamma = 0.1;
  double epsilon = 1.0;
  double beta = 0.05;
};

/// Explicit proof-level error bound alpha for the non-private estimator:
/// alpha = (13/(2 g)) * (ln(2/beta) + ln(1/(1 - exp(-2g/13)))),
/// with g = gamma^4 (a-1/2)^2. epsilon is ignored.
double accuracy_bound_nonprivate(const AccuracyBoundInputs& inputs);

/// Explicit proof-level error bound alpha for PNCPD: the maximum of
/// (26/g) * (ln(4/beta) + ln(1/(1 - exp(-g/26))))   with g as above, and
/// (8/(epsilon gamma (a-1/2))) * (ln(4/beta) + ln(1/(1 - exp(-epsilon gamma (a-1/2)/8)))).
/// epsilon = infinity sends the second term to zero.
double accuracy_bound_private(const AccuracyBoundInputs& inputs);

}  // namespace dpcpd
