#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dpcpd/simulate.hpp"
#include "dpcpd/types.hpp"

namespace dpcpd {

/// A parsed CSV observation column. Accepted layouts: one numeric value per
/// row, or (timestamp, value) pairs taken in row order. An optional header
/// row is auto-detected by a non-numeric first row.
struct CsvSeries {
  std::vector<double> values;
  bool had_header = false;
  bool two_column = false;
};

/// Parses CSV from a stream. Decimal-point numbers and scientific notation,
/// locale-independent. Throws ParseError naming the 1-based offending row.
CsvSeries read_csv_series(std::istream& in);

/// Parses CSV from a file; ParseError mentions the path on open failure.
CsvSeries read_csv_series_file(const std::string& path);

/// Parses one numeric token (locale-independent). Throws ParseError naming
/// the given 1-based row number.
double parse_double_token(std::string_view token, std::size_t row);

/// Parses an epsilon value: a positive number, or "inf"/"infinity"
/// (case-insensitive) for the non-private setting.
double parse_epsilon(std::string_view text);

/// Formats epsilon for output documents: finite values as numbers are left
/// to the JSON layer; this renders the textual form used in CSV ("inf" for
/// infinity).
std::string format_epsilon_text(double epsilon);

/// Writes "alpha,beta" rows.
void write_accuracy_curve_csv(std::ostream& out, const AccuracyCurve& curve);

/// Writes one row per trial with all raw fields.
void write_raw_trials_csv(std::ostream& out,
                          const std::vector<TrialRecord>& trials);

/// Minimal standalone SVG rendering of a beta(alpha) curve: axes plus one
/// polyline in a fixed 640x480 viewbox.
std::string curve_svg(const AccuracyCurve& curve);

}  // namespace dpcpd
