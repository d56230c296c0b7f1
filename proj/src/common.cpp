#include "psilab/common.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace psilab {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";

  // Shortest decimal that parses back to the same bits; fixed notation
  // wins over scientific when both round-trip (10, not 1e+01).
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
  return std::string(buf, end);
}

}  // namespace psilab
