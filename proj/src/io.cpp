#include "dpcpd/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace dpcpd {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
    text.remove_suffix(1);
  }
  return text;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return fields;
}

bool try_parse_double(std::string_view token, double* out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, *out);
  return ec == std::errc() && ptr == end && !token.empty();
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

}  // namespace

double parse_double_token(std::string_view token, std::size_t row) {
  double value = 0.0;
  if (!try_parse_double(token, &value)) {
    throw ParseError("row " + std::to_string(row) + ": '" + std::string(token) +
                     "' is not a number");
  }
  if (!std::isfinite(value)) {
    throw ParseError("row " + std::to_string(row) + ": value is not finite");
  }
  return value;
}

CsvSeries read_csv_series(std::istream& in) {
  CsvSeries series;
  std::string line;
  std::size_t row = 0;
  std::size_t columns = 0;
  bool saw_first = false;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::vector<std::string_view> fields = split_fields(line);
    if (fields.size() > 2) {
      throw ParseError("row " + std::to_string(row) +
                       ": expected 1 or 2 columns, got " +
                       std::to_string(fields.size()));
    }
    if (!saw_first) {
      saw_first = true;
      double probe = 0.0;
      const bool numeric = std::all_of(
          fields.begin(), fields.end(),
          [&probe](std::string_view f) { return try_parse_double(f, &probe); });
      columns = fields.size();
      if (!numeric) {
        series.had_header = true;
        continue;
      }
    }
    if (fields.size() != columns) {
      throw ParseError("row " + std::to_string(row) + ": expected " +
                       std::to_string(columns) + " columns, got " +
                       std::to_string(fields.size()));
    }
    series.two_column = columns == 2;
    series.values.push_back(parse_double_token(fields.back(), row));
  }
  if (series.values.empty()) {
    throw ParseError("no data rows found in csv input");
  }
  return series;
}

CsvSeries read_csv_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open input file: " + path);
  }
  return read_csv_series(in);
}

double parse_epsilon(std::string_view text) {
  std::string lower(trim(text));
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "inf" || lower == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  double value = 0.0;
  if (!try_parse_double(lower, &value) || std::isnan(value) || value <= 0.0) {
    throw ParseError("epsilon must be a positive number or 'inf', got '" +
                     std::string(text) + "'");
  }
  return value;
}

std::string format_epsilon_text(double epsilon) {
  if (std::isinf(epsilon)) return "inf";
  return format_double(epsilon);
}

void write_accuracy_curve_csv(std::ostream& out, const AccuracyCurve& curve) {
  out << "alpha,beta\n";
  for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
    out << curve.alphas[i] << ',' << format_double(curve.betas[i]) << '\n';
  }
}

void write_raw_trials_csv(std::ostream& out,
                          const std::vector<TrialRecord>& trials) {
  out << "trial,seed,detected,k_tilde,trigger_k,false_alarm,error\n";
  for (const TrialRecord& record : trials) {
    out << record.trial << ',' << record.seed << ',' << (record.detected ? 1 : 0)
        << ',' << record.k_tilde << ',' << record.trigger_k << ','
        << (record.false_alarm ? 1 : 0) << ',' << record.error << '\n';
  }
}

std::string curve_svg(const AccuracyCurve& curve) {
  constexpr double kWidth = 640.0;
  constexpr double kHeight = 480.0;
  constexpr double kMargin = 56.0;
  const double plot_w = kWidth - 2 * kMargin;
  const double plot_h = kHeight - 2 * kMargin;
  const double alpha_max = curve.alphas.empty()
                               ? 1.0
                               : std::max<std::size_t>(curve.alphas.back(), 1);

  const auto fmt = [](double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", v);
    return std::string(buffer);
  };
  const auto x_of = [&](double alpha) {
    return kMargin + alpha / alpha_max * plot_w;
  };
  const auto y_of = [&](double beta) { return kMargin + (1.0 - beta) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 480\">\n";
  svg << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << fmt(kMargin) << "\" y1=\"" << fmt(kHeight - kMargin)
      << "\" x2=\"" << fmt(kWidth - kMargin) << "\" y2=\""
      << fmt(kHeight - kMargin) << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << fmt(kMargin) << "\" y1=\"" << fmt(kMargin)
      << "\" x2=\"" << fmt(kMargin) << "\" y2=\"" << fmt(kHeight - kMargin)
      << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"" << fmt(kHeight - 16.0)
      << "\" text-anchor=\"middle\" font-size=\"14\">alpha</text>\n";
  svg << "<text x=\"16\" y=\"" << fmt(kHeight / 2)
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 16 "
      << fmt(kHeight / 2) << ")\">beta</text>\n";
  svg << "<text x=\"" << fmt(kMargin) << "\" y=\"" << fmt(kHeight - kMargin + 18.0)
      << "\" text-anchor=\"middle\" font-size=\"12\">0</text>\n";
  svg << "<text x=\"" << fmt(kWidth - kMargin) << "\" y=\""
      << fmt(kHeight - kMargin + 18.0)
      << "\" text-anchor=\"middle\" font-size=\"12\">"
      << static_cast<std::size_t>(alpha_max) << "</text>\n";
  svg << "<text x=\"" << fmt(kMargin - 8.0) << "\" y=\"" << fmt(kMargin + 4.0)
      << "\" text-anchor=\"end\" font-size=\"12\">1</text>\n";
  svg << "<text x=\"" << fmt(kMargin - 8.0) << "\" y=\""
      << fmt(kHeight - kMargin + 4.0)
      << "\" text-anchor=\"end\" font-size=\"12\">0</text>\n";
  svg << "<polyline fill=\"none\" stroke=\"#d95f02\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
    if (i > 0) svg << ' ';
    svg << fmt(x_of(static_cast<double>(curve.alphas[i]))) << ','
        << fmt(y_of(curve.betas[i]));
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

}  // namespace dpcpd
