#include "dpcpd/mechanisms.hpp"

#include <cmath>

namespace dpcpd {

namespace {

void check_epsilon(double epsilon) {
  if (std::isnan(epsilon) || epsilon <= 0.0) {
    throw DomainError("epsilon must be positive or infinity");
  }
}

void check_sensitivity(double delta) {
  if (!(delta > 0.0) || std::isinf(delta)) {
    throw DomainError("sensitivity must be positive and finite");
  }
}

}  // namespace

std::size_t report_max(const QueryAnswers& answers, double epsilon,
                       double noise_multiplier, LaplaceSampler& sampler,
                       std::vector<double>* noisy_out) {
  if (answers.values.empty()) {
    throw EmptyError("report_max requires at least one query answer");
  }
  check_sensitivity(answers.sensitivity);
  check_epsilon(epsilon);
  if (noise_multiplier != 1.0 && noise_multiplier != 2.0) {
    throw DomainError("noise_multiplier must be 1 or 2");
  }
  const bool noiseless = std::isinf(epsilon);
  const double scale =
      noiseless ? 0.0 : noise_multiplier * answers.sensitivity / epsilon;
  if (noisy_out) {
    noisy_out->clear();
    noisy_out->reserve(answers.values.size());
  }
  std::size_t best = 0;
  double best_value = 0.0;
  for (std::size_t i = 0; i < answers.values.size(); ++i) {
    const double noisy =
        noiseless ? answers.values[i] : answers.values[i] + sampler.sample(scale);
    if (noisy_out) noisy_out->push_back(noisy);
    if (i == 0 || noisy > best_value) {
      best = i;
      best_value = noisy;
    }
  }
  return best + 1;
}

AboveThreshold::AboveThreshold(double threshold, double delta, double epsilon,
                               LaplaceSampler& sampler)
    : delta_(delta), epsilon_(epsilon) {
  if (!std::isfinite(threshold)) {
    throw DomainError("threshold must be finite");
  }
  check_sensitivity(delta);
  check_epsilon(epsilon);
  noisy_threshold_ = std::isinf(epsilon_)
                         ? threshold
                         : threshold + sampler.sample(2.0 * delta_ / epsilon_);
}

ThresholdOutcome AboveThreshold::step(double answer, LaplaceSampler& sampler) {
  if (halted_) {
    throw HaltedError("AboveThreshold has already emitted Top");
  }
  const double noisy_answer = std::isinf(epsilon_)
                                  ? answer
                                  : answer + sampler.sample(4.0 * delta_ / epsilon_);
  if (noisy_answer > noisy_threshold_) {
    halted_ = true;
    return ThresholdOutcome::Top;
  }
  return ThresholdOutcome::Bottom;
}

ThresholdOutcome above_threshold_step(AboveThreshold& state, double answer,
                                      LaplaceSampler& sampler) {
  return state.step(answer, sampler);
}

}  // namespace dpcpd
