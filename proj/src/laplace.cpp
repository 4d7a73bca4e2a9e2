#include "dpcpd/laplace.hpp"

#include <cmath>

namespace dpcpd {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t counter) {
  return splitmix64(base + counter * 0x9e3779b97f4a7c15ull);
}

LaplaceSampler::LaplaceSampler(std::uint64_t seed) : rng_(splitmix64(seed)) {}

LaplaceSampler LaplaceSampler::from_entropy() {
  std::random_device device;
  const std::uint64_t seed =
      (static_cast<std::uint64_t>(device()) << 32) ^ device();
  return LaplaceSampler(seed);
}

double LaplaceSampler::uniform_open() {
  for (;;) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    if (u != 0.0) return u;  // u < 1 by construction
  }
}

double LaplaceSampler::sample(double scale) {
  if (!std::isfinite(scale) || scale <= 0.0) {
    throw ScaleError("Laplace scale must be positive and finite");
  }
  const double x = uniform_open() - 0.5;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(x));
  return x < 0.0 ? -magnitude : magnitude;
}

double laplace_sample(LaplaceSampler& sampler, double scale) {
  return sampler.sample(scale);
}

}  // namespace dpcpd
