#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "dpcpd/errors.hpp"

namespace dpcpd {

/// Immutable sequence of finite observations. Public indices are 1-based in
/// documentation and output; storage and operator[] are 0-based.
class TimeSeries {
 public:
  /// Throws LengthError if fewer than 2 values, DomainError on NaN/infinity.
  explicit TimeSeries(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// Which extremum of the statistic locates the change: ArgMax when the
/// separation probability a = Pr[x0 > x1] exceeds 1/2, ArgMin when a < 1/2.
enum class Direction { ArgMax, ArgMin };

/// Configuration for the offline detectors.
struct DetectionConfig {
  double epsilon = 1.0;  ///< privacy parameter; +infinity means non-private
  double gamma = 0.1;    ///< candidate-range constraint, in (0, 1/2)
  Direction direction = Direction::ArgMax;
  std::optional<std::uint64_t> seed;  ///< noise RNG seed; entropy if absent
};

/// One diagnostic entry: candidate index, exact statistic, noisy statistic.
struct NoisyScore {
  std::size_t k = 0;
  double value = 0.0;
  double noisy_value = 0.0;
};

/// Result of a detection. k_hat is 1-based.
struct DetectionResult {
  std::size_t k_hat = 0;
  std::optional<std::vector<NoisyScore>> noisy_scores;
};

/// Distribution descriptor: Gaussian natively, or a custom sampler.
class DistributionSpec {
 public:
  using SamplerFn = std::function<double(std::mt19937_64&)>;

  static DistributionSpec gaussian(double mu, double sigma);
  static DistributionSpec custom(SamplerFn sampler);

  bool is_gaussian() const noexcept { return is_gaussian_; }
  double mu() const;     ///< DomainError if not Gaussian
  double sigma() const;  ///< DomainError if not Gaussian
  double sample(std::mt19937_64& rng) const;

 private:
  DistributionSpec() = default;

  bool is_gaussian_ = false;
  double mu_ = 0.0;
  double sigma_ = 1.0;
  SamplerFn sampler_;
};

/// Parameters of the i.i.d. change-point model: x_1..x_{k*} from pre,
/// x_{k*+1}..x_n from post.
struct ChangePointModelParams {
  DistributionSpec pre = DistributionSpec::gaussian(0.0, 1.0);
  DistributionSpec post = DistributionSpec::gaussian(0.0, 1.0);
  std::size_t k_star = 1;
  std::size_t n = 2;
};

/// Rounds up, snapping values within a tiny relative tolerance of an integer
/// to that integer first (gamma*n is frequently off by one ulp).
std::size_t ceil_index(double x);

/// Rounds down with the same snapping rule as ceil_index.
std::size_t floor_index(double x);

/// Candidate range {ceil(gamma*n), ..., floor((1-gamma)*n)} for a series of
/// length n; both endpoints 1-based inclusive.
struct CandidateRange {
  std::size_t first = 0;
  std::size_t last = 0;

  bool empty() const noexcept { return first > last; }
  std::size_t count() const noexcept { return empty() ? 0 : last - first + 1; }
};

CandidateRange candidate_range(double gamma, std::size_t n);

/// Validates cfg against a series of length n. Online use additionally
/// requires gamma < 1/4. Throws ConfigError naming the violated constraint.
void validate_config(const DetectionConfig& cfg, std::size_t n, bool online);

}  // namespace dpcpd
