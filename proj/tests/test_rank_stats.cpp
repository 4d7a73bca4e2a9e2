#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <vector>

#include "dpcpd/rank_stats.hpp"

namespace {

dpcpd::TimeSeries ts(std::vector<double> values) {
  return dpcpd::TimeSeries(std::move(values));
}

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n,
                                  bool with_ties) {
  std::vector<double> values(n);
  if (with_ties) {
    std::uniform_int_distribution<int> dist(-3, 3);
    for (auto& v : values) v = static_cast<double>(dist(rng));
  } else {
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (auto& v : values) v = dist(rng);
  }
  return values;
}

double cube(double x) { return x * x * x; }

}  // namespace

TEST_CASE("v statistic matches hand-computed examples", "[rank_stats]") {
  REQUIRE(dpcpd::v_stat_bruteforce(ts({3.0, 1.0}), 1) == 1.0);
  REQUIRE(dpcpd::v_stat_bruteforce(ts({1.0, 2.0, 3.0}), 1) == 0.0);
  REQUIRE(dpcpd::v_stat_bruteforce(ts({5.0, 4.0, 1.0, 2.0}), 2) == 1.0);
  REQUIRE(dpcpd::v_stat_bruteforce(ts({1.0, 1.0, 1.0, 1.0}), 2) == 0.0);
  // One inversion out of four comparisons.
  REQUIRE(dpcpd::v_stat_bruteforce(ts({2.0, 1.0, 1.5, 3.0}), 2) == 0.25);
}

TEST_CASE("v statistic rejects out-of-range split points", "[rank_stats]") {
  REQUIRE_THROWS_AS(dpcpd::v_stat_bruteforce(ts({1.0, 2.0}), 0),
                    dpcpd::IndexError);
  REQUIRE_THROWS_AS(dpcpd::v_stat_bruteforce(ts({1.0, 2.0}), 2),
                    dpcpd::IndexError);
}

TEST_CASE("v_stats_all covers exactly the candidate range", "[rank_stats]") {
  const auto stats = dpcpd::v_stats_all(ts({1.0, 2.0, 3.0, 4.0}), 0.25);
  REQUIRE(stats.size() == 3);
  REQUIRE(stats.front().k == 1);
  REQUIRE(stats.back().k == 3);
  for (const auto& s : stats) {
    REQUIRE(s.numerator == 0);
    REQUIRE(s.value == 0.0);
  }

  for (const auto& s : dpcpd::v_stats_all(ts({4.0, 3.0, 2.0, 1.0}), 0.25)) {
    REQUIRE(s.value == 1.0);
  }
}

TEST_CASE("incremental sweep agrees with brute force", "[rank_stats]") {
  std::mt19937_64 rng(20240811);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 4 + static_cast<std::size_t>(rng() % 47);
    const auto series = ts(random_values(rng, n, rep % 2 == 0));
    const double gamma = 0.05 + 0.3 * (static_cast<double>(rng() % 1000) / 1000.0);
    const auto range = dpcpd::candidate_range(gamma, n);
    if (range.empty()) continue;
    const auto stats = dpcpd::v_stats_all(series, gamma);
    REQUIRE(stats.size() == range.count());
    for (const auto& s : stats) {
      REQUIRE(s.numerator == dpcpd::v_numerator_bruteforce(series, s.k));
      const double denom =
          static_cast<double>(s.k) * static_cast<double>(n - s.k);
      REQUIRE(s.value == static_cast<double>(s.numerator) / denom);
    }
  }
}

TEST_CASE("v statistic is invariant to translation and monotone maps",
          "[rank_stats]") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> dist(-10, 10);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<double> base(12);
    for (auto& v : base) v = static_cast<double>(dist(rng));
    std::vector<double> shifted(base.size());
    std::vector<double> cubed(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      shifted[i] = base[i] + 1000.0;
      cubed[i] = cube(base[i]);
    }
    for (std::size_t k = 1; k < base.size(); ++k) {
      const auto expected = dpcpd::v_numerator_bruteforce(ts(base), k);
      REQUIRE(dpcpd::v_numerator_bruteforce(ts(shifted), k) == expected);
      REQUIRE(dpcpd::v_numerator_bruteforce(ts(cubed), k) == expected);
    }
  }
}

TEST_CASE("negation flips the v statistic for tie-free data", "[rank_stats]") {
  std::mt19937_64 rng(99);
  const auto values = random_values(rng, 20, false);
  std::vector<double> negated(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) negated[i] = -values[i];
  for (std::size_t k = 1; k < values.size(); ++k) {
    const double v = dpcpd::v_stat_bruteforce(ts(values), k);
    const double v_neg = dpcpd::v_stat_bruteforce(ts(negated), k);
    REQUIRE_THAT(v + v_neg, Catch::Matchers::WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("u statistic is the centered v statistic of the window",
          "[rank_stats]") {
  REQUIRE(dpcpd::u_stat_bruteforce(ts({3.0, 1.0})) == 1.0);
  REQUIRE(dpcpd::u_stat_bruteforce(ts({1.0, 1.0, 1.0, 1.0})) == 0.0);
  REQUIRE_THROWS_AS(dpcpd::u_stat_bruteforce(ts({1.0, 2.0, 3.0})),
                    dpcpd::LengthError);

  std::mt19937_64 rng(123);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 2 * (1 + rng() % 10);
    const auto window = ts(random_values(rng, n, rep % 2 == 0));
    REQUIRE(dpcpd::u_stat_bruteforce(window) ==
            dpcpd::v_stat_bruteforce(window, n / 2));
  }
}

TEST_CASE("sensitivities match their closed forms", "[rank_stats]") {
  REQUIRE(dpcpd::sensitivity_offline(0.1, 200) == 0.05);
  REQUIRE(dpcpd::sensitivity_window(500) == 0.004);
  REQUIRE(dpcpd::sensitivity_window(2) == 1.0);
  REQUIRE_THROWS_AS(dpcpd::sensitivity_window(3), dpcpd::LengthError);
  REQUIRE_THROWS_AS(dpcpd::sensitivity_offline(0.6, 200), dpcpd::ConfigError);
}

TEST_CASE("offline engine sweeps every split point", "[rank_stats]") {
  std::mt19937_64 rng(31337);
  const auto series = ts(random_values(rng, 30, true));
  dpcpd::OfflineStatEngine engine(series);
  REQUIRE(engine.k() == 1);
  while (true) {
    REQUIRE(engine.numerator() ==
            dpcpd::v_numerator_bruteforce(series, engine.k()));
    if (engine.k() == series.size() - 1) break;
    engine.advance();
  }
  REQUIRE_THROWS_AS(engine.advance(), dpcpd::IndexError);
}

TEST_CASE("window engine needs a full warmup", "[rank_stats]") {
  dpcpd::WindowStatEngine engine(2);
  REQUIRE_FALSE(engine.warmed_up());
  REQUIRE_THROWS_AS(engine.push(1.0), dpcpd::StateError);
  REQUIRE_THROWS_AS(engine.u_value(), dpcpd::StateError);
  engine.add_warmup(3.0);
  engine.add_warmup(1.0);
  REQUIRE(engine.warmed_up());
  REQUIRE(engine.u_value() == 1.0);
  REQUIRE_THROWS_AS(engine.add_warmup(2.0), dpcpd::StateError);
  // Pushing 2.0 slides the window to [1, 2], which is sorted.
  REQUIRE(engine.push(2.0) == 0.0);
  REQUIRE(engine.window() == std::vector<double>{1.0, 2.0});

  REQUIRE_THROWS_AS(dpcpd::WindowStatEngine(3), dpcpd::LengthError);
  REQUIRE_THROWS_AS(dpcpd::WindowStatEngine(0), dpcpd::LengthError);
}

TEST_CASE("window engine matches brute force on a sliding stream",
          "[rank_stats]") {
  std::mt19937_64 rng(424242);
  for (const std::size_t n : {std::size_t{4}, std::size_t{8}, std::size_t{12}}) {
    const auto stream = random_values(rng, n + 100, true);
    dpcpd::WindowStatEngine engine(n);
    for (std::size_t i = 0; i < n; ++i) engine.add_warmup(stream[i]);
    for (std::size_t i = n; i < stream.size(); ++i) {
      const double u = dpcpd::window_push(engine, stream[i]);
      const std::vector<double> window(stream.begin() + (i + 1 - n),
                                       stream.begin() + (i + 1));
      REQUIRE(u == dpcpd::u_stat_bruteforce(dpcpd::TimeSeries(window)));
      REQUIRE(engine.window() == window);
    }
  }
}
