#include "dpcpd/drift.hpp"

#include <cmath>
#include <string>

#include "dpcpd/offline.hpp"

namespace dpcpd {

DriftTransform DriftTransform::odd_root(int power) {
  if (power < 1 || power % 2 == 0) {
    throw DomainError("odd-root transform requires an odd positive power");
  }
  return DriftTransform{Kind::OddRoot, power};
}

double DriftTransform::apply(double x) const {
  switch (kind) {
    case Kind::Identity:
      return x;
    case Kind::Log:
      if (!(x > 0.0)) {
        throw DomainError("log inverse transform requires positive values");
      }
      return std::log(x);
    case Kind::Exp:
      return std::exp(x);
    case Kind::OddRoot:
      if (power == 1) return x;
      return std::copysign(std::pow(std::abs(x), 1.0 / power), x);
  }
  throw DomainError("unknown transform kind");
}

TimeSeries pair_difference(const TimeSeries& series,
                           const DriftTransform& transform) {
  const std::size_t n = series.size();
  if (n % 2 != 0) {
    throw LengthError("pair differencing requires an even length, got n=" +
                      std::to_string(n));
  }
  if (n < 4) {
    throw LengthError("pair differencing requires n >= 4 to leave 2 samples");
  }
  std::vector<double> diffs;
  diffs.reserve(n / 2);
  for (std::size_t t = 0; t < n / 2; ++t) {
    diffs.push_back(transform.apply(series[2 * t + 1]) -
                    transform.apply(series[2 * t]));
  }
  return TimeSeries(std::move(diffs));
}

DetectionResult detect_drift(const TimeSeries& series, const DetectionConfig& cfg,
                             const DriftTransform& transform,
                             bool collect_noisy_scores) {
  LaplaceSampler sampler =
      cfg.seed ? LaplaceSampler(*cfg.seed) : LaplaceSampler::from_entropy();
  return detect_drift(series, cfg, sampler, transform, collect_noisy_scores);
}

DetectionResult detect_drift(const TimeSeries& series, const DetectionConfig& cfg,
                             LaplaceSampler& sampler,
                             const DriftTransform& transform,
                             bool collect_noisy_scores) {
  const TimeSeries reduced = pair_difference(series, transform);
  DetectionResult result =
      detect_pncpd(reduced, cfg, sampler, collect_noisy_scores);
  result.k_hat = 2 * result.k_hat - 1;
  return result;
}

TimeSeries generate_drift(const DriftModelParams& params, std::uint64_t seed) {
  if (params.n < 2 || params.n % 2 != 0) {
    throw LengthError("drift model requires even n >= 2");
  }
  if (params.t_star < 1 || params.t_star > params.n) {
    throw DomainError("t_star must lie in [1, n]");
  }
  std::mt19937_64 rng(mix_seed(seed, 0));
  std::vector<double> values;
  values.reserve(params.n);
  for (std::size_t t = 1; t <= params.n; ++t) {
    const double offset =
        t <= params.t_star
            ? -static_cast<double>(params.t_star - t) * params.xi0
            : static_cast<double>(t - params.t_star) * params.xi1;
    values.push_back(params.eta + offset + params.noise.sample(rng));
  }
  return TimeSeries(std::move(values));
}

OnlineDriftDetector::OnlineDriftDetector(const OnlineConfig& cfg,
                                         const DriftTransform& transform)
    : inner_(cfg), transform_(transform) {}

OnlineEvent OnlineDriftDetector::push(double x) {
  if (!have_first_) {
    first_ = transform_.apply(x);
    have_first_ = true;
    return OnlineEvent{OnlineEvent::Kind::NeedMoreData, 0, std::nullopt};
  }
  const double diff = transform_.apply(x) - first_;
  have_first_ = false;
  OnlineEvent event = inner_.push(diff);
  if (event.kind == OnlineEvent::Kind::Scanned ||
      event.kind == OnlineEvent::Kind::Triggered) {
    event.k = 2 * event.k - 1;
  } else if (event.kind == OnlineEvent::Kind::Result) {
    event.result->k_hat = 2 * event.result->k_hat - 1;
    event.k = event.result->k_hat;
    result_ = event.result;
  }
  return event;
}

}  // namespace dpcpd
