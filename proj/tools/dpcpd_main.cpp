// Command-line front end: CSV ingestion, detection subcommands, threshold
// advisory, and the Monte Carlo experiment runner.

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpcpd/drift.hpp"
#include "dpcpd/io.hpp"
#include "dpcpd/offline.hpp"
#include "dpcpd/online.hpp"
#include "dpcpd/simulate.hpp"
#include "dpcpd/types.hpp"

namespace {

using nlohmann::json;

constexpr const char* kSeedEnvVar = "DP_CPD_SEED";

json epsilon_to_json(double epsilon) {
  if (std::isinf(epsilon)) return json("inf");
  return json(epsilon);
}

double epsilon_from_json(const json& j) {
  if (j.is_string()) return dpcpd::parse_epsilon(j.get<std::string>());
  if (j.is_number()) {
    const double value = j.get<double>();
    if (std::isnan(value) || value <= 0.0) {
      throw dpcpd::ParseError("epsilon must be positive");
    }
    return value;
  }
  throw dpcpd::ParseError("epsilon must be a number or the string 'inf'");
}

dpcpd::Direction parse_direction(const std::string& text) {
  if (text == "argmax") return dpcpd::Direction::ArgMax;
  if (text == "argmin") return dpcpd::Direction::ArgMin;
  throw dpcpd::ParseError("direction must be 'argmax' or 'argmin', got '" +
                          text + "'");
}

const char* direction_name(dpcpd::Direction direction) {
  return direction == dpcpd::Direction::ArgMax ? "argmax" : "argmin";
}

std::uint64_t parse_uint64(std::string_view text, const std::string& what) {
  std::uint64_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw dpcpd::ParseError(what + " must be an unsigned integer, got '" +
                            std::string(text) + "'");
  }
  return value;
}

/// Seed resolution order: --seed flag, then DP_CPD_SEED, then entropy.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed) {
  if (flag_seed) return *flag_seed;
  if (const char* env = std::getenv(kSeedEnvVar)) {
    return parse_uint64(env, std::string(kSeedEnvVar));
  }
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

/// Parses "MU,SIGMA" into a Gaussian spec.
dpcpd::DistributionSpec parse_gaussian(const std::string& text,
                                       const std::string& flag) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw dpcpd::ParseError(flag + " expects 'MU,SIGMA', got '" + text + "'");
  }
  const double mu = dpcpd::parse_double_token(
      std::string_view(text).substr(0, comma), 1);
  const double sigma = dpcpd::parse_double_token(
      std::string_view(text).substr(comma + 1), 1);
  return dpcpd::DistributionSpec::gaussian(mu, sigma);
}

/// Parses a 1-based inclusive "START:END" row window.
std::pair<std::size_t, std::size_t> parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw dpcpd::ParseError("--window expects 'START:END', got '" + text + "'");
  }
  const auto start = parse_uint64(std::string_view(text).substr(0, colon),
                                  "--window start");
  const auto end = parse_uint64(std::string_view(text).substr(colon + 1),
                                "--window end");
  if (start < 1 || end < start) {
    throw dpcpd::ParseError("--window requires 1 <= START <= END");
  }
  return {static_cast<std::size_t>(start), static_cast<std::size_t>(end)};
}

// ---------------------------------------------------------------------------
// detect-offline

struct OfflineArgs {
  std::string input;
  std::string epsilon_text = "1";
  double gamma = 0.1;
  std::string direction_text;
  std::optional<std::uint64_t> seed;
  std::string window_text;
  std::string format = "json";
  bool emit_noisy_scores = false;
};

int run_detect_offline(const OfflineArgs& args) {
  const double epsilon = dpcpd::parse_epsilon(args.epsilon_text);
  const dpcpd::Direction direction = parse_direction(args.direction_text);
  if (args.emit_noisy_scores && args.format != "json") {
    throw dpcpd::ParseError("--emit-noisy-scores requires --format json");
  }

  const dpcpd::CsvSeries csv = dpcpd::read_csv_series_file(args.input);
  std::vector<double> values = csv.values;
  if (!args.window_text.empty()) {
    const auto [start, end] = parse_window(args.window_text);
    if (end > values.size()) {
      throw dpcpd::ParseError("--window end " + std::to_string(end) +
                              " exceeds the " + std::to_string(values.size()) +
                              " data rows");
    }
    values.assign(values.begin() + (start - 1), values.begin() + end);
  }

  dpcpd::DetectionConfig cfg;
  cfg.epsilon = epsilon;
  cfg.gamma = args.gamma;
  cfg.direction = direction;
  cfg.seed = resolve_seed(args.seed);

  if (args.emit_noisy_scores) {
    std::cerr << "warning: --emit-noisy-scores releases the per-candidate "
                 "noisy statistics, which consumes additional privacy budget "
                 "beyond the reported index\n";
  }

  const dpcpd::TimeSeries series(std::move(values));
  const dpcpd::DetectionResult result =
      dpcpd::detect_pncpd(series, cfg, args.emit_noisy_scores);

  if (args.format == "csv") {
    std::cout << "k_hat,n,epsilon,gamma,direction,seed\n"
              << result.k_hat << ',' << series.size() << ','
              << dpcpd::format_epsilon_text(cfg.epsilon) << ',' << cfg.gamma
              << ',' << direction_name(direction) << ',' << *cfg.seed << '\n';
    return 0;
  }

  json doc;
  doc["k_hat"] = result.k_hat;
  doc["n"] = series.size();
  doc["epsilon"] = epsilon_to_json(cfg.epsilon);
  doc["gamma"] = cfg.gamma;
  doc["direction"] = direction_name(direction);
  doc["seed"] = *cfg.seed;
  if (result.noisy_scores) {
    json scores = json::array();
    for (const auto& score : *result.noisy_scores) {
      scores.push_back({{"k", score.k},
                        {"value", score.value},
                        {"noisy_value", score.noisy_value}});
    }
    doc["noisy_scores"] = std::move(scores);
  }
  std::cout << doc.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// detect-online

struct OnlineArgs {
  std::string input;
  std::size_t n = 0;
  std::string epsilon_text = "1";
  double gamma = 0.1;
  double threshold = 0.5;
  std::optional<std::uint64_t> seed;
  bool verbose = false;
};

json online_config_json(const dpcpd::OnlineConfig& cfg) {
  json doc;
  doc["n"] = cfg.n;
  doc["epsilon"] = epsilon_to_json(cfg.epsilon);
  doc["gamma"] = cfg.gamma;
  doc["threshold"] = cfg.threshold;
  doc["seed"] = *cfg.seed;
  return doc;
}

int run_detect_online(const OnlineArgs& args) {
  dpcpd::OnlineConfig cfg;
  cfg.n = args.n;
  cfg.epsilon = dpcpd::parse_epsilon(args.epsilon_text);
  cfg.gamma = args.gamma;
  cfg.threshold = args.threshold;
  cfg.seed = resolve_seed(args.seed);

  dpcpd::OnlineDetector detector(cfg);

  const auto consume = [&detector, &args](double x) {
    const dpcpd::OnlineEvent event = detector.push(x);
    switch (event.kind) {
      case dpcpd::OnlineEvent::Kind::Scanned:
        if (args.verbose) {
          std::cout << json{{"event", "scanned"}, {"k", event.k}}.dump()
                    << '\n';
        }
        return false;
      case dpcpd::OnlineEvent::Kind::Triggered:
        std::cout << json{{"event", "triggered"}, {"k", event.k}}.dump()
                  << '\n';
        return false;
      case dpcpd::OnlineEvent::Kind::Result:
        return true;
      case dpcpd::OnlineEvent::Kind::NeedMoreData:
        return false;
    }
    return false;
  };

  bool finished = false;
  if (args.input == "-") {
    std::string line;
    std::size_t row = 0;
    while (!finished && std::getline(std::cin, line)) {
      ++row;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::string_view token(line);
      while (!token.empty() && (token.front() == ' ' || token.front() == '\t'))
        token.remove_prefix(1);
      while (!token.empty() && (token.back() == ' ' || token.back() == '\t'))
        token.remove_suffix(1);
      if (token.empty()) continue;
      finished = consume(dpcpd::parse_double_token(token, row));
    }
  } else {
    const dpcpd::CsvSeries csv = dpcpd::read_csv_series_file(args.input);
    for (const double x : csv.values) {
      if ((finished = consume(x))) break;
    }
  }

  if (finished) {
    json doc = online_config_json(cfg);
    doc["event"] = "result";
    doc["k_hat"] = detector.result()->k_hat;
    doc["trigger_k"] = detector.trigger_k();
    std::cout << doc.dump() << '\n';
    return 0;
  }

  const char* reason = "stream_end";
  if (detector.phase() == dpcpd::OnlinePhase::Warmup) {
    reason = "warmup_incomplete";
  } else if (detector.phase() == dpcpd::OnlinePhase::Waiting) {
    reason = "stream_end_during_wait";
  }
  json doc = online_config_json(cfg);
  doc["event"] = "no_change";
  doc["reason"] = reason;
  std::cout << doc.dump() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// thresholds

struct ThresholdArgs {
  std::size_t n = 0;
  double k_star = 0.0;
  std::optional<double> a;
  std::string pre_text;
  std::string post_text;
  double beta = 0.0;
  std::string epsilon_text = "inf";
};

int run_thresholds(const ThresholdArgs& args) {
  const double epsilon = dpcpd::parse_epsilon(args.epsilon_text);

  double a = 0.0;
  if (args.a) {
    if (!args.pre_text.empty() || !args.post_text.empty()) {
      throw dpcpd::ParseError("--a excludes --pre/--post");
    }
    a = *args.a;
  } else {
    if (args.pre_text.empty() || args.post_text.empty()) {
      throw dpcpd::ParseError("provide either --a or both --pre and --post");
    }
    a = dpcpd::separation_probability(
        parse_gaussian(args.pre_text, "--pre"),
        parse_gaussian(args.post_text, "--post"));
  }

  bool reflected = false;
  if (a < 0.5) {
    a = 1.0 - a;
    reflected = true;
  }

  const dpcpd::ThresholdBounds bounds =
      dpcpd::threshold_bounds(args.n, args.k_star, a, args.beta, epsilon);
  const std::size_t window =
      dpcpd::min_window_size(a, args.k_star, args.beta, epsilon);

  json doc;
  doc["n"] = args.n;
  doc["kstar"] = args.k_star;
  doc["a"] = a;
  doc["beta"] = args.beta;
  doc["epsilon"] = epsilon_to_json(epsilon);
  doc["t_lower"] = bounds.t_lower;
  doc["t_upper"] = bounds.t_upper;
  doc["feasible"] = bounds.feasible;
  doc["min_window_size"] = window;
  if (reflected) {
    doc["note"] =
        "separation below 1/2 was reflected to 1-a; scan the negated "
        "stream (or use argmin offline) for this change direction";
  }
  std::cout << doc.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string config_path;
  std::string detector_text = "pncpd";
  std::string model_text = "changepoint";
  std::string pre_text = "0,1";
  std::string post_text = "0,1";
  std::size_t k_star = 1;
  std::size_t length = 2;
  double eta = 0.0;
  double xi0 = 0.0;
  double xi1 = 0.0;
  std::size_t t_star = 1;
  std::string noise_text = "0,1";
  std::string epsilon_text = "1";
  double gamma = 0.1;
  std::string direction_text = "argmax";
  std::size_t window_size = 0;
  double threshold = 0.5;
  std::size_t trials = 1;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  std::string out_dir;
  bool svg = false;
};

dpcpd::DetectorKind parse_detector(const std::string& text) {
  if (text == "nonprivate") return dpcpd::DetectorKind::NonPrivate;
  if (text == "pncpd") return dpcpd::DetectorKind::Pncpd;
  if (text == "online") return dpcpd::DetectorKind::OnlinePncpd;
  if (text == "drift") return dpcpd::DetectorKind::Drift;
  throw dpcpd::ParseError(
      "detector must be one of nonprivate|pncpd|online|drift, got '" + text +
      "'");
}

const char* detector_name(dpcpd::DetectorKind kind) {
  switch (kind) {
    case dpcpd::DetectorKind::NonPrivate: return "nonprivate";
    case dpcpd::DetectorKind::Pncpd: return "pncpd";
    case dpcpd::DetectorKind::OnlinePncpd: return "online";
    case dpcpd::DetectorKind::Drift: return "drift";
  }
  return "?";
}

dpcpd::DistributionSpec gaussian_from_json(const json& j,
                                           const std::string& what) {
  if (!j.is_object()) {
    throw dpcpd::ParseError(what + " must be an object {mu, sigma}");
  }
  return dpcpd::DistributionSpec::gaussian(j.value("mu", 0.0),
                                           j.value("sigma", 1.0));
}

dpcpd::ExperimentSpec spec_from_json(const json& j) {
  dpcpd::ExperimentSpec spec;
  if (!j.is_object()) throw dpcpd::ParseError("config must be a JSON object");
  spec.detector = parse_detector(j.value("detector", "pncpd"));

  if (!j.contains("model") || !j.at("model").is_object()) {
    throw dpcpd::ParseError("config requires a 'model' object");
  }
  const json& model = j.at("model");
  const std::string type = model.value("type", "changepoint");
  if (type == "changepoint") {
    dpcpd::ChangePointModelParams params;
    if (model.contains("pre")) params.pre = gaussian_from_json(model.at("pre"), "model.pre");
    if (model.contains("post")) params.post = gaussian_from_json(model.at("post"), "model.post");
    params.k_star = model.value("k_star", params.k_star);
    params.n = model.value("n", params.n);
    spec.model = params;
  } else if (type == "drift") {
    dpcpd::DriftModelParams params;
    params.eta = model.value("eta", params.eta);
    params.xi0 = model.value("xi0", params.xi0);
    params.xi1 = model.value("xi1", params.xi1);
    params.t_star = model.value("t_star", params.t_star);
    params.n = model.value("n", params.n);
    if (model.contains("noise")) {
      params.noise = gaussian_from_json(model.at("noise"), "model.noise");
    }
    spec.model = params;
  } else {
    throw dpcpd::ParseError("model.type must be 'changepoint' or 'drift'");
  }

  if (j.contains("epsilon")) spec.cfg.epsilon = epsilon_from_json(j.at("epsilon"));
  spec.cfg.gamma = j.value("gamma", spec.cfg.gamma);
  if (j.contains("direction")) {
    spec.cfg.direction = parse_direction(j.at("direction").get<std::string>());
  }
  if (j.contains("online")) {
    const json& online = j.at("online");
    dpcpd::OnlineConfig cfg;
    cfg.n = online.value("n", cfg.n);
    if (online.contains("epsilon")) cfg.epsilon = epsilon_from_json(online.at("epsilon"));
    cfg.gamma = online.value("gamma", cfg.gamma);
    cfg.threshold = online.value("threshold", cfg.threshold);
    spec.online_cfg = cfg;
  }
  spec.trials = j.value("trials", spec.trials);
  if (j.contains("seed")) spec.base_seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

dpcpd::ExperimentSpec spec_from_flags(const SimulateArgs& args) {
  dpcpd::ExperimentSpec spec;
  spec.detector = parse_detector(args.detector_text);
  if (args.model_text == "changepoint") {
    dpcpd::ChangePointModelParams params;
    params.pre = parse_gaussian(args.pre_text, "--pre");
    params.post = parse_gaussian(args.post_text, "--post");
    params.k_star = args.k_star;
    params.n = args.length;
    spec.model = params;
  } else if (args.model_text == "drift") {
    dpcpd::DriftModelParams params;
    params.eta = args.eta;
    params.xi0 = args.xi0;
    params.xi1 = args.xi1;
    params.t_star = args.t_star;
    params.n = args.length;
    params.noise = parse_gaussian(args.noise_text, "--noise");
    spec.model = params;
  } else {
    throw dpcpd::ParseError("--model must be 'changepoint' or 'drift'");
  }
  spec.cfg.epsilon = dpcpd::parse_epsilon(args.epsilon_text);
  spec.cfg.gamma = args.gamma;
  spec.cfg.direction = parse_direction(args.direction_text);
  if (spec.detector == dpcpd::DetectorKind::OnlinePncpd) {
    dpcpd::OnlineConfig cfg;
    cfg.n = args.window_size;
    cfg.epsilon = spec.cfg.epsilon;
    cfg.gamma = args.gamma;
    cfg.threshold = args.threshold;
    spec.online_cfg = cfg;
  }
  spec.trials = args.trials;
  return spec;
}

int run_simulate(const SimulateArgs& args, bool trials_given,
                 bool seed_given) {
  dpcpd::ExperimentSpec spec;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) {
      throw dpcpd::ParseError("cannot open config file: " + args.config_path);
    }
    json parsed;
    try {
      in >> parsed;
    } catch (const json::exception& error) {
      throw dpcpd::ParseError(std::string("config file is not valid JSON: ") +
                              error.what());
    }
    try {
      spec = spec_from_json(parsed);
    } catch (const json::exception& error) {
      throw dpcpd::ParseError(std::string("bad config field: ") + error.what());
    }
    if (trials_given) spec.trials = args.trials;
  } else {
    spec = spec_from_flags(args);
  }
  if (seed_given || !args.config_path.empty()) {
    if (seed_given) spec.base_seed = *args.seed;
  } else {
    spec.base_seed = resolve_seed(args.seed);
  }

  if (args.out_dir.empty()) {
    throw dpcpd::ParseError("--out directory is required");
  }
  std::filesystem::create_directories(args.out_dir);

  const dpcpd::ExperimentResult result =
      dpcpd::run_experiment(spec, args.jobs == 0 ? 1 : args.jobs);

  const auto curve_path =
      (std::filesystem::path(args.out_dir) / "accuracy_curve.csv").string();
  const auto raw_path =
      (std::filesystem::path(args.out_dir) / "raw_trials.csv").string();
  {
    std::ofstream out(curve_path);
    if (!out) throw dpcpd::Error("cannot write " + curve_path);
    dpcpd::write_accuracy_curve_csv(out, result.curve);
  }
  {
    std::ofstream out(raw_path);
    if (!out) throw dpcpd::Error("cannot write " + raw_path);
    dpcpd::write_raw_trials_csv(out, result.trials);
  }
  std::string svg_path;
  if (args.svg) {
    svg_path = (std::filesystem::path(args.out_dir) / "curve.svg").string();
    std::ofstream out(svg_path);
    if (!out) throw dpcpd::Error("cannot write " + svg_path);
    out << dpcpd::curve_svg(result.curve);
  }

  json doc;
  doc["detector"] = detector_name(spec.detector);
  doc["trials"] = spec.trials;
  doc["seed"] = spec.base_seed;
  doc["false_alarm_rate"] = result.false_alarm_rate;
  doc["miss_rate"] = result.miss_rate;
  json beta_at;
  for (const std::size_t alpha : {std::size_t{0}, std::size_t{5},
                                  std::size_t{10}, std::size_t{20},
                                  std::size_t{50}}) {
    if (alpha < result.curve.betas.size()) {
      beta_at[std::to_string(alpha)] = result.curve.betas[alpha];
    }
  }
  doc["beta_at"] = std::move(beta_at);
  doc["curve_file"] = curve_path;
  doc["raw_file"] = raw_path;
  if (args.svg) doc["svg_file"] = svg_path;
  std::cout << doc.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Differentially private nonparametric change-point detection"};
  app.require_subcommand(1);

  OfflineArgs offline;
  CLI::App* detect_offline = app.add_subcommand(
      "detect-offline", "Detect a change point in a CSV series");
  detect_offline->add_option("input", offline.input, "CSV input file")
      ->required();
  detect_offline->add_option("--epsilon", offline.epsilon_text,
                             "privacy budget (positive number or 'inf')");
  detect_offline->add_option("--gamma", offline.gamma,
                             "candidate-range constraint in (0, 1/2)");
  detect_offline
      ->add_option("--direction", offline.direction_text,
                   "'argmax' (change decreases values) or 'argmin'")
      ->required();
  detect_offline->add_option("--seed", offline.seed, "noise RNG seed");
  detect_offline->add_option("--window", offline.window_text,
                             "1-based inclusive row slice START:END");
  detect_offline->add_option("--format", offline.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  detect_offline->add_flag("--emit-noisy-scores", offline.emit_noisy_scores,
                           "include per-candidate noisy statistics (spends "
                           "extra privacy budget)");

  OnlineArgs online;
  CLI::App* detect_online = app.add_subcommand(
      "detect-online", "Stream a series through the online detector");
  detect_online
      ->add_option("input", online.input,
                   "CSV input file, or '-' for newline-delimited stdin")
      ->required();
  detect_online->add_option("--n", online.n, "window size (even, >= 4)")
      ->required();
  detect_online->add_option("--epsilon", online.epsilon_text,
                            "total privacy budget (number or 'inf')");
  detect_online->add_option("--gamma", online.gamma,
                            "constraint parameter in (0, 1/4)");
  detect_online->add_option("--threshold", online.threshold,
                            "scan threshold T");
  detect_online->add_option("--seed", online.seed, "noise RNG seed");
  detect_online->add_flag("--verbose", online.verbose,
                          "also print below-threshold scan events");

  ThresholdArgs thresholds;
  CLI::App* cmd_thresholds = app.add_subcommand(
      "thresholds", "Advisory threshold interval and minimum window size");
  cmd_thresholds->add_option("--n", thresholds.n, "window size")->required();
  cmd_thresholds
      ->add_option("--kstar", thresholds.k_star, "anticipated change time")
      ->required();
  cmd_thresholds->add_option("--a", thresholds.a,
                             "separation probability Pr[x0 > x1]");
  cmd_thresholds->add_option("--pre", thresholds.pre_text,
                             "pre-change Gaussian MU,SIGMA");
  cmd_thresholds->add_option("--post", thresholds.post_text,
                             "post-change Gaussian MU,SIGMA");
  cmd_thresholds->add_option("--beta", thresholds.beta,
                             "failure probability in (0, 1)")
      ->required();
  cmd_thresholds->add_option("--epsilon", thresholds.epsilon_text,
                             "privacy budget (number or 'inf')");

  SimulateArgs simulate;
  CLI::App* cmd_simulate = app.add_subcommand(
      "simulate", "Monte Carlo accuracy experiment");
  cmd_simulate->add_option("--config", simulate.config_path,
                           "experiment spec as a JSON file");
  cmd_simulate->add_option("--detector", simulate.detector_text,
                           "nonprivate|pncpd|online|drift");
  cmd_simulate->add_option("--model", simulate.model_text,
                           "changepoint or drift");
  cmd_simulate->add_option("--pre", simulate.pre_text,
                           "pre-change Gaussian MU,SIGMA");
  cmd_simulate->add_option("--post", simulate.post_text,
                           "post-change Gaussian MU,SIGMA");
  cmd_simulate->add_option("--kstar", simulate.k_star, "true change time");
  cmd_simulate->add_option("--len", simulate.length, "series length n");
  cmd_simulate->add_option("--eta", simulate.eta, "drift level at t*");
  cmd_simulate->add_option("--xi0", simulate.xi0, "pre-change drift slope");
  cmd_simulate->add_option("--xi1", simulate.xi1, "post-change drift slope");
  cmd_simulate->add_option("--tstar", simulate.t_star, "drift change time");
  cmd_simulate->add_option("--noise", simulate.noise_text,
                           "drift noise Gaussian MU,SIGMA");
  cmd_simulate->add_option("--epsilon", simulate.epsilon_text,
                           "privacy budget (number or 'inf')");
  cmd_simulate->add_option("--gamma", simulate.gamma, "constraint parameter");
  cmd_simulate->add_option("--direction", simulate.direction_text,
                           "argmax or argmin");
  cmd_simulate->add_option("--window-size", simulate.window_size,
                           "online window size (detector=online)");
  cmd_simulate->add_option("--threshold", simulate.threshold,
                           "online scan threshold");
  cmd_simulate->add_option("--trials", simulate.trials, "number of trials");
  cmd_simulate->add_option("--seed", simulate.seed, "base seed");
  cmd_simulate->add_option("--jobs", simulate.jobs, "worker threads");
  cmd_simulate->add_option("--out", simulate.out_dir, "output directory")
      ->required();
  cmd_simulate->add_flag("--svg", simulate.svg, "also write curve.svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (detect_offline->parsed()) return run_detect_offline(offline);
    if (detect_online->parsed()) return run_detect_online(online);
    if (cmd_thresholds->parsed()) return run_thresholds(thresholds);
    if (cmd_simulate->parsed()) {
      return run_simulate(simulate, cmd_simulate->count("--trials") > 0,
                          cmd_simulate->count("--seed") > 0);
    }
  } catch (const dpcpd::Error& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "internal error: " << error.what() << '\n';
    return 1;
  }
  return 1;
}
