#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "psilab/common.hpp"

namespace psilab {

/// Nondegenerate open interval of the parameter line. Endpoints may be
/// -inf / +inf; membership is always strict.
struct ParameterInterval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static ParameterInterval open(double lo, double hi) {
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi))
      throw error("ParameterInterval: need lo < hi, got [" + format_double(lo) +
                  ", " + format_double(hi) + "]");
    return {lo, hi};
  }

  static ParameterInterval whole_line() { return {}; }

  static ParameterInterval positive_half_line() {
    return {0.0, std::numeric_limits<double>::infinity()};
  }

  bool contains(double t) const { return lo < t && t < hi; }

  bool bounded_below() const { return std::isfinite(lo); }
  bool bounded_above() const { return std::isfinite(hi); }
  bool bounded() const { return bounded_below() && bounded_above(); }

  /// Deterministic interior point used to seed bracketing searches:
  /// the midpoint when both ends are finite, 0 when the interval allows it,
  /// otherwise one unit inside the finite end.
  double default_seed() const {
    if (bounded()) return 0.5 * (lo + hi);
    if (contains(0.0)) return 0.0;
    if (bounded_below()) return lo + 1.0;
    return hi - 1.0;
  }

  std::string to_string() const {
    return "(" + format_double(lo) + ", " + format_double(hi) + ")";
  }

  friend bool operator==(const ParameterInterval&,
                         const ParameterInterval&) = default;
};

}  // namespace psilab
