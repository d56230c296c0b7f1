#pragma once

#include <functional>
#include <string>

#include "psilab/common.hpp"
#include "psilab/interval.hpp"
#include "psilab/observation.hpp"

namespace psilab {

/// Regularity claims attached to a score family: continuity in the
/// parameter (c), existence of a sign-change point for every sample (t),
/// and a vanishing score sum at that point (z). Claims are metadata; the
/// checks that exercise them live elsewhere.
struct Claims {
  bool c = false;
  bool t = false;
  bool z = false;

  std::string to_string() const {
    std::string s;
    if (c) s += 'C';
    if (t) s += 'T';
    if (z) s += 'Z';
    return s.empty() ? "-" : s;
  }

  friend bool operator==(const Claims&, const Claims&) = default;
};

/// Numeric knobs shared by the sign-change engine and everything above it.
struct Tolerances {
  double bracket_growth = 2.0;      // geometric probe growth, unbounded ends
  double root_abs_tol = 1e-12;      // final bracket width
  double plateau_width_tol = 1e-9;  // zero bands wider than this disqualify
  double zero_tol = 1e-10;          // |f| at or below this counts as zero
  int max_bracket_steps = 200;
  int max_bisect_steps = 200;

  void validate() const {
    if (!(bracket_growth > 1.0)) throw error("Tolerances: bracket_growth must exceed 1");
    if (!(root_abs_tol > 0.0)) throw error("Tolerances: root_abs_tol must be positive");
    if (!(plateau_width_tol > 0.0)) throw error("Tolerances: plateau_width_tol must be positive");
    if (!(zero_tol >= 0.0)) throw error("Tolerances: zero_tol must be nonnegative");
    if (max_bracket_steps < 1 || max_bisect_steps < 1)
      throw error("Tolerances: step budgets must be at least 1");
  }
};

/// A parametric score psi(x, t): observation x, parameter t in `domain`.
/// eval must be a pure function of its arguments.
struct ScoreFamily {
  std::string name;
  ParameterInterval domain;
  Claims claims;
  std::function<double(const Observation&, double)> eval;
};

}  // namespace psilab
