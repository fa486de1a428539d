#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace qsanov {

/// Shortest round-trip decimal rendering; "inf", "-inf" and "nan" for the
/// non-finite values. Output depends only on the bit pattern.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace qsanov
