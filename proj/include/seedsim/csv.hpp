#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "seedsim/errors.hpp"

namespace seedsim {

// Shortest round-trip decimal form, identical on every platform and thread
// count; NaN (used for undefined ratios) always prints as "nan".
inline std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw ParseError(line_no, "bad numeric field '" + std::string(token) + "'");
  }
  return value;
}

inline unsigned long long parse_count(std::string_view token, std::size_t line_no) {
  unsigned long long value = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw ParseError(line_no, "bad integer field '" + std::string(token) + "'");
  }
  return value;
}

// Plain comma split; fields in this project never contain commas or quotes.
inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace seedsim
