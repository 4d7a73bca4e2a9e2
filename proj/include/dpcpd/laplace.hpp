#pragma once

#include <cstdint>
#include <random>

#include "dpcpd/errors.hpp"

namespace dpcpd {

/// SplitMix64 finalizer; used to stretch one base seed into independent
/// per-trial or per-purpose seeds without sequential RNG state.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t counter);

/// Seedable Laplace noise source. Sampling uses the inverse CDF applied to a
/// single uniform draw from the open interval (0,1).
///
/// Not cryptographically secure: the generator is a statistical PRNG and
/// floating-point Laplace sampling is subject to known precision attacks.
/// Intended for research reproduction, not adversarial deployment.
class LaplaceSampler {
 public:
  explicit LaplaceSampler(std::uint64_t seed);

  /// Seeds from std::random_device.
  static LaplaceSampler from_entropy();

  /// One draw from Lap(scale). Throws ScaleError unless scale > 0.
  double sample(double scale);

  /// One uniform draw from the open interval (0,1).
  double uniform_open();

  std::mt19937_64& rng() noexcept { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Free-function form of LaplaceSampler::sample.
double laplace_sample(LaplaceSampler& sampler, double scale);

}  // namespace dpcpd
