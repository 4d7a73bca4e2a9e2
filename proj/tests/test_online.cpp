#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "dpcpd/online.hpp"

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

dpcpd::OnlineConfig config(std::size_t n, double epsilon, double gamma,
                           double threshold, std::uint64_t seed) {
  dpcpd::OnlineConfig cfg;
  cfg.n = n;
  cfg.epsilon = epsilon;
  cfg.gamma = gamma;
  cfg.threshold = threshold;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("online detector walks the documented state machine", "[online]") {
  // Stream: four 9s, then 0s; window n = 4, noiseless, T = 0.8.
  dpcpd::OnlineDetector detector(config(4, kInf, 0.2, 0.8, 1));
  REQUIRE(detector.phase() == dpcpd::OnlinePhase::Warmup);
  REQUIRE(detector.noisy_threshold() == 0.8);

  for (int i = 0; i < 4; ++i) {
    const auto event = detector.push(9.0);
    REQUIRE(event.kind == dpcpd::OnlineEvent::Kind::NeedMoreData);
  }
  REQUIRE(detector.phase() == dpcpd::OnlinePhase::Scanning);

  // Push 5: window [9,9,9,0], U = 1/2, below threshold.
  auto event = detector.push(0.0);
  REQUIRE(event.kind == dpcpd::OnlineEvent::Kind::Scanned);
  REQUIRE(event.k == 3);  // first scan is centered at n/2 + 1

  // Push 6: window [9,9,0,0], U = 1 > 0.8: trigger at center 4.
  event = detector.push(0.0);
  REQUIRE(event.kind == dpcpd::OnlineEvent::Kind::Triggered);
  REQUIRE(event.k == 4);
  REQUIRE(detector.phase() == dpcpd::OnlinePhase::Waiting);
  REQUIRE(detector.trigger_k() == 4);

  // Push 7: the ceil(gamma n) = 1 wait point arrives and detection finishes.
  // Final window [9,0,0,0]: V peaks at local cut 1, global 1 + (7-4) = 4.
  event = detector.push(0.0);
  REQUIRE(event.kind == dpcpd::OnlineEvent::Kind::Result);
  REQUIRE(event.result.has_value());
  REQUIRE(event.result->k_hat == 4);
  REQUIRE(event.k == 4);
  REQUIRE(detector.phase() == dpcpd::OnlinePhase::Done);
  REQUIRE(detector.result().has_value());
  REQUIRE(detector.result()->k_hat == 4);

  REQUIRE_THROWS_AS(detector.push(0.0), dpcpd::StateError);
}

TEST_CASE("online detector waits ceil(gamma n) points before finishing",
          "[online]") {
  // n = 10, gamma = 0.2: two wait points after the trigger.
  dpcpd::OnlineDetector detector(config(10, kInf, 0.2, 0.8, 1));
  for (int i = 0; i < 10; ++i) detector.push(9.0);

  std::vector<dpcpd::OnlineEvent::Kind> kinds;
  std::vector<std::size_t> ks;
  for (int i = 0; i < 7; ++i) {
    const auto event = detector.push(0.0);
    kinds.push_back(event.kind);
    ks.push_back(event.k);
  }
  using Kind = dpcpd::OnlineEvent::Kind;
  REQUIRE(kinds == std::vector<Kind>{Kind::Scanned, Kind::Scanned,
                                     Kind::Scanned, Kind::Scanned,
                                     Kind::Triggered, Kind::NeedMoreData,
                                     Kind::Result});
  // Scans are centered at 6, 7, 8, 9; U crosses 0.8 at center 10.
  REQUIRE(ks[0] == 6);
  REQUIRE(ks[3] == 9);
  REQUIRE(ks[4] == 10);
  REQUIRE(detector.trigger_k() == 10);
  // Final window holds three 9s: the cut after them is global index 10.
  REQUIRE(detector.result()->k_hat == 10);
}

TEST_CASE("online detector stays quiet on stationary data", "[online]") {
  std::mt19937_64 rng(20240815);
  std::normal_distribution<double> noise(0.0, 1.0);
  dpcpd::OnlineDetector detector(config(200, kInf, 0.1, 0.85, 7));
  for (int i = 0; i < 5000; ++i) {
    const auto event = detector.push(noise(rng));
    REQUIRE(event.kind != dpcpd::OnlineEvent::Kind::Triggered);
    REQUIRE(event.kind != dpcpd::OnlineEvent::Kind::Result);
  }
  REQUIRE(detector.phase() == dpcpd::OnlinePhase::Scanning);
  REQUIRE_FALSE(detector.result().has_value());
  REQUIRE(detector.trigger_k() == 0);
}

TEST_CASE("online detector localizes a strong downward change", "[online]") {
  const std::size_t k_star = 300;
  std::mt19937_64 rng(99);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> stream(600);
  for (std::size_t i = 0; i < stream.size(); ++i) {
    stream[i] = noise(rng) + (i < k_star ? 5.0 : 0.0);
  }

  dpcpd::OnlineDetector detector(config(100, 10.0, 0.1, 0.8, 4242));
  std::optional<std::size_t> k_hat;
  for (const double x : stream) {
    const auto event = detector.push(x);
    if (event.kind == dpcpd::OnlineEvent::Kind::Result) {
      k_hat = event.result->k_hat;
      break;
    }
  }
  REQUIRE(k_hat.has_value());
  const std::size_t distance =
      *k_hat > k_star ? *k_hat - k_star : k_star - *k_hat;
  REQUIRE(distance <= 25);
  // The trigger center must sit within half a window of the true change.
  REQUIRE(detector.trigger_k() >= k_star - 50);
  REQUIRE(detector.trigger_k() <= k_star + 50);
}

TEST_CASE("online detection is reproducible under a fixed seed", "[online]") {
  std::mt19937_64 rng(555);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> stream(400);
  for (std::size_t i = 0; i < stream.size(); ++i) {
    stream[i] = noise(rng) + (i < 200 ? 3.0 : 0.0);
  }

  const auto run = [&stream](std::uint64_t seed) {
    dpcpd::OnlineDetector detector(config(100, 5.0, 0.1, 0.75, seed));
    for (const double x : stream) {
      if (detector.push(x).kind == dpcpd::OnlineEvent::Kind::Result) break;
    }
    return std::make_pair(detector.trigger_k(),
                          detector.result() ? detector.result()->k_hat : 0);
  };
  REQUIRE(run(12345) == run(12345));
}

TEST_CASE("online config validation names the violation", "[online]") {
  const auto violation_of = [](dpcpd::OnlineConfig cfg) {
    try {
      dpcpd::OnlineDetector detector(cfg);
    } catch (const dpcpd::ConfigError& error) {
      return error.violation();
    }
    throw std::logic_error("expected ConfigError");
  };

  REQUIRE(violation_of(config(5, 1.0, 0.1, 0.5, 0)) ==
          dpcpd::ConfigError::Violation::WindowSizeInvalid);
  REQUIRE(violation_of(config(2, 1.0, 0.1, 0.5, 0)) ==
          dpcpd::ConfigError::Violation::WindowSizeInvalid);
  REQUIRE(violation_of(config(100, 1.0, 0.1, std::nan(""), 0)) ==
          dpcpd::ConfigError::Violation::ThresholdNotFinite);
  REQUIRE(violation_of(config(100, 1.0, 0.3, 0.5, 0)) ==
          dpcpd::ConfigError::Violation::GammaOnlineTooLarge);
  REQUIRE(violation_of(config(100, 0.0, 0.1, 0.5, 0)) ==
          dpcpd::ConfigError::Violation::EpsilonNotPositive);
}

TEST_CASE("threshold bounds reproduce frozen reference evaluations",
          "[online]") {
  const double a = 0.99979652399127752053;  // Pr[N(5,1) sample > N(0,1) sample]
  const struct {
    double epsilon;
    double t_lower;
    double t_upper;
    bool feasible;
  } table[] = {
      {1.0, 1.314578225, 0.156785499, false},
      {5.0, 0.8342100652, 0.7436210661, false},
      {10.0, 0.7741640451, 0.816975512, true},
      {kInf, 0.7141180251, 0.8903299579, true},
  };
  for (const auto& row : table) {
    const auto bounds = dpcpd::threshold_bounds(500, 5000.0, a, 0.4, row.epsilon);
    REQUIRE_THAT(bounds.t_lower,
                 Catch::Matchers::WithinAbs(row.t_lower, 1e-8));
    REQUIRE_THAT(bounds.t_upper,
                 Catch::Matchers::WithinAbs(row.t_upper, 1e-8));
    REQUIRE(bounds.feasible == row.feasible);
  }
}

TEST_CASE("threshold bounds tighten as the budget grows", "[online]") {
  const double a = 0.9998;
  double last_lower = kInf;
  double last_upper = -kInf;
  for (const double epsilon : {1.0, 2.0, 5.0, 10.0, 100.0}) {
    const auto bounds = dpcpd::threshold_bounds(500, 5000.0, a, 0.4, epsilon);
    REQUIRE(bounds.t_lower < last_lower);
    REQUIRE(bounds.t_upper > last_upper);
    last_lower = bounds.t_lower;
    last_upper = bounds.t_upper;
  }
}

TEST_CASE("threshold bounds reject out-of-domain parameters", "[online]") {
  REQUIRE_THROWS_AS(dpcpd::threshold_bounds(500, 250.0, 0.99, 0.4, 1.0),
                    dpcpd::DomainError);
  REQUIRE_THROWS_AS(dpcpd::threshold_bounds(500, 5000.0, 0.5, 0.4, 1.0),
                    dpcpd::DomainError);
  REQUIRE_THROWS_AS(dpcpd::threshold_bounds(500, 5000.0, 1.0, 0.4, 1.0),
                    dpcpd::DomainError);
  REQUIRE_THROWS_AS(dpcpd::threshold_bounds(500, 5000.0, 0.99, 1.5, 1.0),
                    dpcpd::DomainError);
  REQUIRE_THROWS_AS(dpcpd::threshold_bounds(500, 5000.0, 0.99, 0.4, 0.0),
                    dpcpd::DomainError);
}

TEST_CASE("min window size reproduces frozen reference evaluations",
          "[online]") {
  REQUIRE(dpcpd::min_window_size(0.99, 1e6, 0.4, kInf) == 284);
  REQUIRE(dpcpd::min_window_size(0.99, 1e6, 0.4, 100.0) == 1506);
  REQUIRE(dpcpd::min_window_size(0.99979652399127752053, 5000.0, 0.4, 200.0) ==
          480);
}

TEST_CASE("min window size behaves like a minimum", "[online]") {
  // Even, at least 4, shrinking as the separation grows, smallest when
  // noiseless.
  for (const double a : {0.8, 0.9, 0.99}) {
    const auto n = dpcpd::min_window_size(a, 1e5, 0.4, 10.0);
    REQUIRE(n >= 4);
    REQUIRE(n % 2 == 0);
    REQUIRE(dpcpd::min_window_size(a, 1e5, 0.4, kInf) <= n);
  }
  REQUIRE(dpcpd::min_window_size(0.99, 1e5, 0.4, 10.0) <
          dpcpd::min_window_size(0.9, 1e5, 0.4, 10.0));

  // The returned size admits a feasible threshold at the same parameters.
  const struct {
    double a;
    double k_star;
    double epsilon;
  } cases[] = {
      {0.99, 1e6, kInf},
      {0.99, 1e6, 100.0},
      {0.99979652399127752053, 5000.0, 200.0},
  };
  for (const auto& c : cases) {
    const auto n = dpcpd::min_window_size(c.a, c.k_star, 0.4, c.epsilon);
    const auto bounds =
        dpcpd::threshold_bounds(n, c.k_star, c.a, 0.4, c.epsilon);
    REQUIRE(bounds.feasible);
  }
}
