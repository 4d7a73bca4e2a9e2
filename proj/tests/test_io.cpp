#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "dpcpd/io.hpp"
#include "dpcpd/offline.hpp"

namespace {

dpcpd::CsvSeries parse(const std::string& text) {
  std::istringstream in(text);
  return dpcpd::read_csv_series(in);
}

}  // namespace

TEST_CASE("csv reader accepts one value per row", "[io]") {
  const auto series = parse("1.5\n-2\n3e2\n");
  REQUIRE(series.values == std::vector<double>{1.5, -2.0, 300.0});
  REQUIRE_FALSE(series.had_header);
  REQUIRE_FALSE(series.two_column);
}

TEST_CASE("csv reader accepts timestamp,value rows", "[io]") {
  const auto series = parse("1,10.5\n2,11.5\n3,9.0\n");
  REQUIRE(series.values == std::vector<double>{10.5, 11.5, 9.0});
  REQUIRE(series.two_column);
}

TEST_CASE("csv reader detects a header row", "[io]") {
  const auto series = parse("t,value\n1,10.5\n2,11.5\n");
  REQUIRE(series.values == std::vector<double>{10.5, 11.5});
  REQUIRE(series.had_header);

  const auto single = parse("value\n4\n5\n");
  REQUIRE(single.values == std::vector<double>{4.0, 5.0});
  REQUIRE(single.had_header);
}

TEST_CASE("csv reader tolerates blank lines and CRLF", "[io]") {
  const auto series = parse("1\r\n\r\n2\n\n3\r\n");
  REQUIRE(series.values == std::vector<double>{1.0, 2.0, 3.0});

  const auto spaced = parse(" 1 , 2.5 \n 2 , 3.5 \n");
  REQUIRE(spaced.values == std::vector<double>{2.5, 3.5});
}

TEST_CASE("csv reader reports the offending row", "[io]") {
  try {
    parse("1\n2\noops\n4\n");
    FAIL("expected ParseError");
  } catch (const dpcpd::ParseError& error) {
    REQUIRE(std::string(error.what()).find("3") != std::string::npos);
  }

  REQUIRE_THROWS_AS(parse("1,2,3\n"), dpcpd::ParseError);   // too many columns
  REQUIRE_THROWS_AS(parse("1,2\n3\n"), dpcpd::ParseError);  // column mismatch
  REQUIRE_THROWS_AS(parse("nan\n1\n"), dpcpd::ParseError);  // non-finite
  REQUIRE_THROWS_AS(parse(""), dpcpd::ParseError);          // empty input
}

TEST_CASE("csv file reader names the missing path", "[io]") {
  try {
    dpcpd::read_csv_series_file("/nonexistent/series.csv");
    FAIL("expected ParseError");
  } catch (const dpcpd::ParseError& error) {
    REQUIRE(std::string(error.what()).find("/nonexistent/series.csv") !=
            std::string::npos);
  }
}

TEST_CASE("epsilon parsing accepts numbers and the infinity spellings",
          "[io]") {
  REQUIRE(dpcpd::parse_epsilon("1.5") == 1.5);
  REQUIRE(dpcpd::parse_epsilon("0.1") == 0.1);
  REQUIRE(std::isinf(dpcpd::parse_epsilon("inf")));
  REQUIRE(std::isinf(dpcpd::parse_epsilon("INF")));
  REQUIRE(std::isinf(dpcpd::parse_epsilon("Infinity")));
  REQUIRE_THROWS_AS(dpcpd::parse_epsilon("0"), dpcpd::ParseError);
  REQUIRE_THROWS_AS(dpcpd::parse_epsilon("-1"), dpcpd::ParseError);
  REQUIRE_THROWS_AS(dpcpd::parse_epsilon("abc"), dpcpd::ParseError);
  REQUIRE_THROWS_AS(dpcpd::parse_epsilon(""), dpcpd::ParseError);

  REQUIRE(dpcpd::format_epsilon_text(
              std::numeric_limits<double>::infinity()) == "inf");
  REQUIRE(dpcpd::format_epsilon_text(2.5) == "2.5");
}

TEST_CASE("accuracy curve csv matches the golden layout", "[io]") {
  dpcpd::AccuracyCurve curve;
  curve.alphas = {0, 1, 2};
  curve.betas = {1.0, 0.25, 0.0};
  std::ostringstream out;
  dpcpd::write_accuracy_curve_csv(out, curve);
  REQUIRE(out.str() == "alpha,beta\n0,1\n1,0.25\n2,0\n");
}

TEST_CASE("raw trials csv matches the golden layout", "[io]") {
  dpcpd::TrialRecord record;
  record.trial = 1;
  record.seed = 42;
  record.detected = true;
  record.k_tilde = 99;
  record.trigger_k = 100;
  record.false_alarm = false;
  record.error = -1;
  std::ostringstream out;
  dpcpd::write_raw_trials_csv(out, {record});
  REQUIRE(out.str() ==
          "trial,seed,detected,k_tilde,trigger_k,false_alarm,error\n"
          "1,42,1,99,100,0,-1\n");
}

TEST_CASE("bundled step fixture parses and detects cleanly", "[io]") {
  const auto series =
      dpcpd::read_csv_series_file(std::string(DPCPD_TEST_DATA_DIR) +
                                  "/step_series.csv");
  REQUIRE(series.values.size() == 20);
  REQUIRE_FALSE(series.had_header);

  const dpcpd::TimeSeries ts(series.values);
  const auto result =
      dpcpd::detect_nonprivate(ts, 0.2, dpcpd::Direction::ArgMax);
  REQUIRE(result.k_hat == 10);
}

TEST_CASE("curve svg renders a standalone polyline", "[io]") {
  dpcpd::AccuracyCurve curve;
  curve.alphas = {0, 1, 2, 3};
  curve.betas = {1.0, 0.5, 0.25, 0.0};
  const auto svg = dpcpd::curve_svg(curve);
  REQUIRE(svg.find("<svg") != std::string::npos);
  REQUIRE(svg.find("<polyline") != std::string::npos);
  REQUIRE(svg.find("</svg>") != std::string::npos);
  REQUIRE(svg.find("alpha") != std::string::npos);
  REQUIRE(svg.find("beta") != std::string::npos);
  // Deterministic output.
  REQUIRE(svg == dpcpd::curve_svg(curve));
}
