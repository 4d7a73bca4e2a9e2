#include "dpcpd/online.hpp"

#include <cmath>
#include <string>

#include "dpcpd/offline.hpp"

namespace dpcpd {

namespace {

LaplaceSampler make_sampler(const std::optional<std::uint64_t>& seed) {
  return seed ? LaplaceSampler(*seed) : LaplaceSampler::from_entropy();
}

void validate_online(const OnlineConfig& cfg) {
  if (cfg.n < 4 || cfg.n % 2 != 0) {
    throw ConfigError(ConfigError::Violation::WindowSizeInvalid,
                      "online window size must be even and at least 4");
  }
  if (!std::isfinite(cfg.threshold)) {
    throw ConfigError(ConfigError::Violation::ThresholdNotFinite,
                      "threshold must be finite");
  }
  DetectionConfig probe;
  probe.epsilon = cfg.epsilon;
  probe.gamma = cfg.gamma;
  validate_config(probe, cfg.n, /*online=*/true);
}

}  // namespace

OnlineDetector::OnlineDetector(const OnlineConfig& cfg)
    : cfg_((validate_online(cfg), cfg)),
      sampler_(make_sampler(cfg.seed)),
      engine_(cfg.n),
      mechanism_(cfg.threshold, sensitivity_window(cfg.n), cfg.epsilon / 2.0,
                 sampler_) {}

OnlineEvent OnlineDetector::push(double x) {
  switch (phase_) {
    case OnlinePhase::Warmup: {
      engine_.add_warmup(x);
      ++pushed_;
      if (engine_.warmed_up()) phase_ = OnlinePhase::Scanning;
      return OnlineEvent{OnlineEvent::Kind::NeedMoreData, 0, std::nullopt};
    }
    case OnlinePhase::Scanning: {
      const double u = engine_.push(x);
      ++pushed_;
      const std::size_t center = pushed_ - cfg_.n / 2;
      if (mechanism_.step(u, sampler_) == ThresholdOutcome::Top) {
        phase_ = OnlinePhase::Waiting;
        trigger_k_ = center;
        wait_remaining_ =
            ceil_index(cfg_.gamma * static_cast<double>(cfg_.n));
        return OnlineEvent{OnlineEvent::Kind::Triggered, center, std::nullopt};
      }
      return OnlineEvent{OnlineEvent::Kind::Scanned, center, std::nullopt};
    }
    case OnlinePhase::Waiting: {
      engine_.push(x);
      ++pushed_;
      --wait_remaining_;
      if (wait_remaining_ > 0) {
        return OnlineEvent{OnlineEvent::Kind::NeedMoreData, 0, std::nullopt};
      }
      return finish();
    }
    case OnlinePhase::Done:
      break;
  }
  throw StateError("online detector already produced its result");
}

OnlineEvent OnlineDetector::finish() {
  DetectionConfig finishing;
  finishing.epsilon = cfg_.epsilon / 2.0;  // infinity stays infinity
  finishing.gamma = cfg_.gamma;
  finishing.direction = Direction::ArgMax;

  const TimeSeries window(engine_.window());
  const DetectionResult local = detect_pncpd(window, finishing, sampler_);
  DetectionResult global;
  global.k_hat = local.k_hat + (pushed_ - cfg_.n);  // window start offset
  result_ = global;
  phase_ = OnlinePhase::Done;
  OnlineEvent event;
  event.kind = OnlineEvent::Kind::Result;
  event.k = global.k_hat;
  event.result = global;
  return event;
}

ThresholdBounds threshold_bounds(std::size_t n, double k_star_estimate,
                                 double a, double beta, double epsilon) {
  if (n < 2) throw DomainError("window size must be at least 2");
  if (!(a > 0.5) || !(a < 1.0)) {
    throw DomainError("separation probability a must lie in (1/2, 1)");
  }
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw DomainError("beta must lie in (0, 1)");
  }
  if (std::isnan(epsilon) || epsilon <= 0.0) {
    throw DomainError("epsilon must be positive or infinity");
  }
  const double half = static_cast<double>(n) / 2.0;
  if (!(k_star_estimate > half)) {
    throw DomainError("k* estimate must exceed n/2");
  }
  const double m = k_star_estimate - half;
  const double nn = static_cast<double>(n);
  const bool noiseless = std::isinf(epsilon);

  ThresholdBounds bounds;
  bounds.t_lower = 0.5 + std::sqrt(2.0 / nn * std::log(8.0 * m / beta)) +
                   (noiseless ? 0.0 : 32.0 * std::log(m / beta) / (nn * epsilon));
  bounds.t_upper = a - std::sqrt(2.0 / nn * std::log(8.0 / beta)) -
                   (noiseless ? 0.0
                              : 32.0 * std::log(8.0 * m / beta) / (nn * epsilon));
  bounds.feasible = bounds.t_lower < bounds.t_upper;
  return bounds;
}

std::size_t min_window_size(double a, double k_star_estimate, double beta,
                            double epsilon) {
  if (!(a > 0.5) || !(a < 1.0)) {
    throw DomainError("separation probability a must lie in (1/2, 1)");
  }
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw DomainError("beta must lie in (0, 1)");
  }
  if (std::isnan(epsilon) || epsilon <= 0.0) {
    throw DomainError("epsilon must be positive or infinity");
  }
  if (!(k_star_estimate > 0.0)) {
    throw DomainError("k* estimate must be positive");
  }
  const double s = a - 0.5;
  const double log_all = std::log(8.0 * k_star_estimate / beta);
  const double root = std::sqrt(2.0 * log_all) + std::sqrt(2.0 * std::log(8.0 / beta)) +
                      (std::isinf(epsilon) ? 0.0 : 64.0 / epsilon * log_all);
  const double bound = root * root / (s * s);
  std::size_t n = 2 * (floor_index(bound / 2.0) + 1);
  if (n < 4) n = 4;
  return n;
}

}  // namespace dpcpd
