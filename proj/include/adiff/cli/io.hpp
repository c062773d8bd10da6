#pragma once

// Output records, number formatting and argument grammars of the adiff CLI.

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "adiff/error.hpp"
#include "adiff/function.hpp"
#include "adiff/opalgebra.hpp"

namespace adiff::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitInput = 2,
  kExitBudget = 3,
  kExitCrossCheck = 4,
  kExitIo = 5,
};

/// %.17g, which round-trips every double.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct OutputRecord {
  double t = 0.0;
  double value = 0.0;
  double imag = 0.0;
  std::int64_t terms_used = 0;
  std::optional<double> residual;
};

inline constexpr std::string_view kCsvHeader = "t,value,imag,terms_used,residual";

inline std::string to_csv(const OutputRecord& r) {
  std::string line = format_real(r.t) + ',' + format_real(r.value) + ',' + format_real(r.imag) + ',' +
                     std::to_string(r.terms_used) + ',';
  if (r.residual) line += format_real(*r.residual);
  return line;
}

// JSON numbers share the CSV text; non-finite values become null.
inline std::string json_number(double v) { return std::isfinite(v) ? format_real(v) : "null"; }

inline std::string to_json(const OutputRecord& r) {
  return "{\"t\":" + json_number(r.t) + ",\"value\":" + json_number(r.value) + ",\"imag\":" + json_number(r.imag) +
         ",\"terms_used\":" + std::to_string(r.terms_used) +
         ",\"residual\":" + (r.residual ? json_number(*r.residual) : std::string("null")) + "}";
}

enum class Format { Csv, Json };

inline void write_records(std::ostream& out, const std::vector<OutputRecord>& records, Format format) {
  if (format == Format::Csv) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) out << to_csv(r) << '\n';
  } else {
    for (const auto& r : records) out << to_json(r) << '\n';
  }
}

inline std::optional<double> parse_real(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

/// Parses "a", "bi", "a+bi", "a-bi" (e.g. "2", "1i", "-1i", "0.5-0.5i").
/// A bare "i" or "-i" means unit imaginary part.
inline Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  const auto fail = [&]() -> Error {
    return Error(ErrorCode::DomainError, "malformed complex number '" + std::string(text) + "'");
  };
  if (s.empty()) throw fail();
  if (s.back() != 'i') {
    const auto re = parse_real(s);
    if (!re) throw fail();
    return {*re, 0.0};
  }
  const std::string_view body = s.substr(0, s.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string_view re_text = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  std::string_view im_text = split == std::string_view::npos ? body : body.substr(split);
  double re = 0.0;
  if (!re_text.empty()) {
    const auto v = parse_real(re_text);
    if (!v) throw fail();
    re = *v;
  }
  double im = 0.0;
  if (im_text.empty() || im_text == "+") {
    im = 1.0;
  } else if (im_text == "-") {
    im = -1.0;
  } else {
    const auto v = parse_real(im_text);
    if (!v) throw fail();
    im = *v;
  }
  return {re, im};
}

/// Parses "h:lambda;h:lambda;..." into an operator.
inline ops::FactoredOperator parse_factors(std::string_view text) {
  std::vector<ops::LinearFactor> factors;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(';', start), text.size());
    const std::string_view item = trim(text.substr(start, end - start));
    if (item.empty()) throw Error(ErrorCode::DomainError, "empty factor in '" + std::string(text) + "'");
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos)
      throw Error(ErrorCode::DomainError, "factor '" + std::string(item) + "' is not of the form h:lambda");
    const auto h = parse_real(trim(item.substr(0, colon)));
    if (!h) throw Error(ErrorCode::DomainError, "bad shift in factor '" + std::string(item) + "'");
    factors.emplace_back(*h, parse_complex(item.substr(colon + 1)));
    start = end + 1;
  }
  return ops::FactoredOperator(std::move(factors));
}

}  // namespace adiff::cli
