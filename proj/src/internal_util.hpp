#pragma once

// File-format helpers shared by the serialization-heavy translation units.
// Internal to src/, not part of the public headers.

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "cadet/errors.hpp"

namespace cadet::detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r'))
      ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r')
      ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && split_fields(lines.back()).empty()) lines.pop_back();
  return lines;
}

inline double parse_double(std::string_view field, const char* context) {
  double value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw NonNumericField(std::string(context) + ": cannot parse '" +
                          std::string(field) + "' as a number");
  }
  return value;
}

inline long long parse_int(std::string_view field, const char* context) {
  long long value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw NonNumericField(std::string(context) + ": cannot parse '" +
                          std::string(field) + "' as an integer");
  }
  return value;
}

inline std::uint64_t parse_u64(std::string_view field, const char* context) {
  std::uint64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw NonNumericField(std::string(context) + ": cannot parse '" +
                          std::string(field) + "' as an unsigned integer");
  }
  return value;
}

inline void push_f32_le(std::vector<std::uint8_t>& bytes, float f) {
  const auto u = std::bit_cast<std::uint32_t>(f);
  bytes.push_back(static_cast<std::uint8_t>(u & 0xff));
  bytes.push_back(static_cast<std::uint8_t>((u >> 8) & 0xff));
  bytes.push_back(static_cast<std::uint8_t>((u >> 16) & 0xff));
  bytes.push_back(static_cast<std::uint8_t>((u >> 24) & 0xff));
}

inline float pull_f32_le(const std::uint8_t* p) {
  const std::uint32_t u = static_cast<std::uint32_t>(p[0]) |
                          (static_cast<std::uint32_t>(p[1]) << 8) |
                          (static_cast<std::uint32_t>(p[2]) << 16) |
                          (static_cast<std::uint32_t>(p[3]) << 24);
  return std::bit_cast<float>(u);
}

/// Shortest exact decimal form of a double (round-trips bit-for-bit).
inline std::string format_exact(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace cadet::detail
