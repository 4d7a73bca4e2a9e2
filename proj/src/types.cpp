#include "dpcpd/types.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace dpcpd {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw LengthError("time series must contain at least 2 values, got " +
                      std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("time series value at position " + std::to_string(i + 1) +
                        " is not finite");
    }
  }
}

DistributionSpec DistributionSpec::gaussian(double mu, double sigma) {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || sigma < 0.0) {
    throw DomainError("gaussian distribution requires finite mu and sigma >= 0");
  }
  DistributionSpec spec;
  spec.is_gaussian_ = true;
  spec.mu_ = mu;
  spec.sigma_ = sigma;
  return spec;
}

DistributionSpec DistributionSpec::custom(SamplerFn sampler) {
  if (!sampler) {
    throw DomainError("custom distribution requires a callable sampler");
  }
  DistributionSpec spec;
  spec.is_gaussian_ = false;
  spec.sampler_ = std::move(sampler);
  return spec;
}

double DistributionSpec::mu() const {
  if (!is_gaussian_) throw DomainError("mu() is defined only for Gaussian specs");
  return mu_;
}

double DistributionSpec::sigma() const {
  if (!is_gaussian_) throw DomainError("sigma() is defined only for Gaussian specs");
  return sigma_;
}

double DistributionSpec::sample(std::mt19937_64& rng) const {
  if (is_gaussian_) {
    if (sigma_ == 0.0) return mu_;
    std::normal_distribution<double> dist(mu_, sigma_);
    return dist(rng);
  }
  return sampler_(rng);
}

namespace {

constexpr double kSnapTolerance = 1e-9;

bool snaps_to_integer(double x, double* snapped) {
  double r = std::nearbyint(x);
  if (std::abs(x - r) <= kSnapTolerance * std::max(1.0, std::abs(x))) {
    *snapped = r;
    return true;
  }
  return false;
}

}  // namespace

std::size_t ceil_index(double x) {
  double snapped = 0.0;
  if (snaps_to_integer(x, &snapped)) return static_cast<std::size_t>(snapped);
  return static_cast<std::size_t>(std::ceil(x));
}

std::size_t floor_index(double x) {
  double snapped = 0.0;
  if (snaps_to_integer(x, &snapped)) return static_cast<std::size_t>(snapped);
  return static_cast<std::size_t>(std::floor(x));
}

CandidateRange candidate_range(double gamma, std::size_t n) {
  CandidateRange range;
  range.first = ceil_index(gamma * static_cast<double>(n));
  range.last = floor_index((1.0 - gamma) * static_cast<double>(n));
  if (range.first < 1) range.first = 1;
  if (range.last > n - 1) range.last = n - 1;
  return range;
}

void validate_config(const DetectionConfig& cfg, std::size_t n, bool online) {
  if (std::isnan(cfg.epsilon) || cfg.epsilon <= 0.0) {
    throw ConfigError(ConfigError::Violation::EpsilonNotPositive,
                      "epsilon must be positive or infinity");
  }
  if (std::isnan(cfg.gamma) || cfg.gamma <= 0.0 || cfg.gamma >= 0.5) {
    throw ConfigError(ConfigError::Violation::GammaOutOfRange,
                      "gamma must lie in the open interval (0, 1/2)");
  }
  if (online && cfg.gamma >= 0.25) {
    throw ConfigError(ConfigError::Violation::GammaOnlineTooLarge,
                      "online detection requires gamma < 1/4");
  }
  if (n < 2) {
    throw ConfigError(ConfigError::Violation::SeriesTooShort,
                      "detection requires at least 2 observations");
  }
  if (candidate_range(cfg.gamma, n).empty()) {
    throw ConfigError(ConfigError::Violation::EmptyCandidateRange,
                      "candidate range {ceil(gamma*n)..floor((1-gamma)*n)} is empty");
  }
}

}  // namespace dpcpd
