#include "dpcpd/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "dpcpd/offline.hpp"

namespace dpcpd {

namespace {

constexpr std::uint64_t kDataStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::size_t kSeparationDraws = 1'000'000;

std::size_t model_length(const ExperimentSpec& spec) {
  if (std::holds_alternative<ChangePointModelParams>(spec.model)) {
    return std::get<ChangePointModelParams>(spec.model).n;
  }
  return std::get<DriftModelParams>(spec.model).n;
}

std::size_t true_change(const ExperimentSpec& spec) {
  if (std::holds_alternative<ChangePointModelParams>(spec.model)) {
    return std::get<ChangePointModelParams>(spec.model).k_star;
  }
  return std::get<DriftModelParams>(spec.model).t_star;
}

void validate_spec(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw DomainError("experiment requires trials >= 1");
  const bool drift_model = std::holds_alternative<DriftModelParams>(spec.model);
  switch (spec.detector) {
    case DetectorKind::NonPrivate:
    case DetectorKind::Pncpd:
    case DetectorKind::OnlinePncpd:
      if (drift_model) {
        throw DomainError("this detector requires a change-point model");
      }
      break;
    case DetectorKind::Drift:
      if (!drift_model) {
        throw DomainError("the drift detector requires a drift model");
      }
      break;
  }
  if (spec.detector == DetectorKind::OnlinePncpd && !spec.online_cfg) {
    throw DomainError("online experiments require an online configuration");
  }
}

TrialRecord run_trial(const ExperimentSpec& spec, std::size_t trial) {
  TrialRecord record;
  record.trial = trial;
  record.seed = mix_seed(spec.base_seed, trial);
  const std::uint64_t data_seed = mix_seed(record.seed, kDataStream);
  const std::uint64_t noise_seed = mix_seed(record.seed, kNoiseStream);
  const std::int64_t k_star = static_cast<std::int64_t>(true_change(spec));

  switch (spec.detector) {
    case DetectorKind::NonPrivate: {
      const auto& model = std::get<ChangePointModelParams>(spec.model);
      const TimeSeries series = generate_changepoint(model, data_seed);
      const DetectionResult result =
          detect_nonprivate(series, spec.cfg.gamma, spec.cfg.direction);
      record.detected = true;
      record.k_tilde = result.k_hat;
      record.error = static_cast<std::int64_t>(result.k_hat) - k_star;
      break;
    }
    case DetectorKind::Pncpd: {
      const auto& model = std::get<ChangePointModelParams>(spec.model);
      const TimeSeries series = generate_changepoint(model, data_seed);
      LaplaceSampler sampler(noise_seed);
      const DetectionResult result = detect_pncpd(series, spec.cfg, sampler);
      record.detected = true;
      record.k_tilde = result.k_hat;
      record.error = static_cast<std::int64_t>(result.k_hat) - k_star;
      break;
    }
    case DetectorKind::Drift: {
      const auto& model = std::get<DriftModelParams>(spec.model);
      const TimeSeries series = generate_drift(model, data_seed);
      LaplaceSampler sampler(noise_seed);
      const DetectionResult result = detect_drift(series, spec.cfg, sampler);
      record.detected = true;
      record.k_tilde = result.k_hat;
      record.error = static_cast<std::int64_t>(result.k_hat) - k_star;
      break;
    }
    case DetectorKind::OnlinePncpd: {
      const auto& model = std::get<ChangePointModelParams>(spec.model);
      const TimeSeries series = generate_changepoint(model, data_seed);
      OnlineConfig cfg = *spec.online_cfg;
      cfg.seed = noise_seed;
      OnlineDetector detector(cfg);
      for (std::size_t i = 0;
           i < series.size() && detector.phase() != OnlinePhase::Done; ++i) {
        const OnlineEvent event = detector.push(series[i]);
        if (event.kind == OnlineEvent::Kind::Result) {
          record.detected = true;
          record.k_tilde = event.result->k_hat;
          record.error = static_cast<std::int64_t>(event.result->k_hat) - k_star;
        }
      }
      record.trigger_k = detector.trigger_k();
      if (record.trigger_k > 0) {
        const std::int64_t half = static_cast<std::int64_t>(cfg.n) / 2;
        const std::int64_t center = static_cast<std::int64_t>(record.trigger_k);
        const bool in_window =
            k_star >= center - half + 1 && k_star <= center + half;
        record.false_alarm = !in_window;
      }
      break;
    }
  }
  return record;
}

}  // namespace

TimeSeries generate_changepoint(const ChangePointModelParams& params,
                                std::uint64_t seed) {
  if (params.n < 2) throw LengthError("change-point model requires n >= 2");
  if (params.k_star < 1 || params.k_star > params.n) {
    throw DomainError("k_star must lie in [1, n]");
  }
  std::mt19937_64 rng(mix_seed(seed, 0));
  std::vector<double> values;
  values.reserve(params.n);
  for (std::size_t t = 1; t <= params.n; ++t) {
    values.push_back(t <= params.k_star ? params.pre.sample(rng)
                                        : params.post.sample(rng));
  }
  return TimeSeries(std::move(values));
}

ExperimentResult run_experiment(const ExperimentSpec& spec, std::size_t jobs) {
  validate_spec(spec);
  if (jobs < 1) jobs = 1;
  jobs = std::min(jobs, spec.trials);

  std::vector<TrialRecord> records(spec.trials);
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t t = begin; t < end; ++t) {
        records[t] = run_trial(spec, t);
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (jobs == 1) {
    worker(0, spec.trials);
  } else {
    std::vector<std::thread> threads;
    const std::size_t chunk = (spec.trials + jobs - 1) / jobs;
    for (std::size_t j = 0; j < jobs; ++j) {
      const std::size_t begin = j * chunk;
      const std::size_t end = std::min(begin + chunk, spec.trials);
      if (begin >= end) break;
      threads.emplace_back(worker, begin, end);
    }
    for (std::thread& thread : threads) thread.join();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result;
  result.trials = std::move(records);

  const std::size_t n = model_length(spec);
  result.curve.alphas.resize(n + 1);
  result.curve.betas.resize(n + 1);
  for (std::size_t alpha = 0; alpha <= n; ++alpha) {
    std::size_t failures = 0;
    for (const TrialRecord& record : result.trials) {
      if (!record.detected ||
          std::llabs(record.error) > static_cast<std::int64_t>(alpha)) {
        ++failures;
      }
    }
    result.curve.alphas[alpha] = alpha;
    result.curve.betas[alpha] =
        static_cast<double>(failures) / static_cast<double>(spec.trials);
  }
  for (std::size_t i = 1; i < result.curve.betas.size(); ++i) {
    if (result.curve.betas[i] > result.curve.betas[i - 1]) {
      throw Error("accuracy curve is not non-increasing");
    }
  }

  if (spec.detector == DetectorKind::OnlinePncpd) {
    std::size_t alarms = 0;
    std::size_t misses = 0;
    for (const TrialRecord& record : result.trials) {
      if (record.false_alarm) ++alarms;
      if (record.trigger_k == 0) ++misses;
    }
    result.false_alarm_rate =
        static_cast<double>(alarms) / static_cast<double>(spec.trials);
    result.miss_rate =
        static_cast<double>(misses) / static_cast<double>(spec.trials);
  }
  return result;
}

SeparationEstimate separation_probability_detail(const DistributionSpec& pre,
                                                 const DistributionSpec& post,
                                                 std::uint64_t seed) {
  SeparationEstimate estimate;
  if (pre.is_gaussian() && post.is_gaussian()) {
    const double variance = pre.sigma() * pre.sigma() + post.sigma() * post.sigma();
    const double gap = pre.mu() - post.mu();
    estimate.exact = true;
    if (variance == 0.0) {
      estimate.a = gap > 0.0 ? 1.0 : 0.0;
    } else {
      const double z = gap / std::sqrt(variance);
      estimate.a = 0.5 * std::erfc(-z / std::sqrt(2.0));
    }
    return estimate;
  }
  std::mt19937_64 rng(mix_seed(seed, 0));
  std::size_t wins = 0;
  for (std::size_t i = 0; i < kSeparationDraws; ++i) {
    if (pre.sample(rng) > post.sample(rng)) ++wins;
  }
  estimate.exact = false;
  estimate.a = static_cast<double>(wins) / static_cast<double>(kSeparationDraws);
  estimate.std_error = std::sqrt(estimate.a * (1.0 - estimate.a) /
                                 static_cast<double>(kSeparationDraws));
  return estimate;
}

double separation_probability(const DistributionSpec& pre,
                              const DistributionSpec& post) {
  return separation_probability_detail(pre, post).a;
}

}  // namespace dpcpd
