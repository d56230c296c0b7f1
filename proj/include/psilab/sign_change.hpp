#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "psilab/interval.hpp"
#include "psilab/score.hpp"

namespace psilab {

using RealFn = std::function<double(double)>;

enum class SignChangeStatus { Located, ExactZero, Plateau, NoBracket };

const char* to_string(SignChangeStatus s);

// Result of locating a decreasing-type sign change of f: f positive strictly
// left of theta, negative strictly right, value at theta unconstrained.
//
//  Located / ExactZero: theta is set, bracket (lo, hi) satisfies
//    lo <= theta <= hi with hi - lo <= root_abs_tol, and the search verified
//    f > 0 at some point <= theta and f < 0 at some point >= theta.
//  Plateau: |f| stayed within zero_tol at every probe across
//    [plateau_lo, plateau_hi], whose width exceeds plateau_width_tol. No
//    theta is reported.
//  NoBracket: the expansion never saw both signs; probe_log records the
//    probed parameter values.
struct SignChangeResult {
  SignChangeStatus status = SignChangeStatus::NoBracket;
  double theta = std::numeric_limits<double>::quiet_NaN();
  double bracket_lo = std::numeric_limits<double>::quiet_NaN();
  double bracket_hi = std::numeric_limits<double>::quiet_NaN();
  double plateau_lo = std::numeric_limits<double>::quiet_NaN();
  double plateau_hi = std::numeric_limits<double>::quiet_NaN();
  double residual_at_theta = std::numeric_limits<double>::quiet_NaN();
  // Bracket produced by the expansion phase, before bisection tightened it.
  double initial_lo = std::numeric_limits<double>::quiet_NaN();
  double initial_hi = std::numeric_limits<double>::quiet_NaN();
  long evaluations = 0;
  std::vector<double> probe_log;  // populated on NoBracket

  bool ok() const {
    return status == SignChangeStatus::Located ||
           status == SignChangeStatus::ExactZero;
  }
};

struct BracketOutcome {
  bool found = false;
  double lo = 0.0, hi = 0.0;  // f(lo) > 0 > f(hi) when found
  double f_lo = 0.0, f_hi = 0.0;
  long evaluations = 0;
  std::vector<double> probes;
};

/// Expands geometrically from `seed` until it holds a point with f > 0 and a
/// later point with f < 0. Bounded ends are approached by halving the
/// remaining distance; toward an unbounded end the probe offset grows by
/// `bracket_growth` per step. The seed itself serves as one end whenever its
/// sign already qualifies. Derivative-free; seed must lie in `domain`.
BracketOutcome bracket_sign_change(const RealFn& f, ParameterInterval domain,
                                   double seed, const Tolerances& tol);

/// Brackets and then bisects to a decreasing-type sign change. Bisection
/// moves on raw signs; a midpoint with |f| <= zero_tol triggers a widening
/// scan that either certifies a Plateau, re-tightens the bracket, or (for an
/// exact zero pinned between strict signs) reports ExactZero.
SignChangeResult find_sign_change(const RealFn& f, ParameterInterval domain,
                                  double seed, const Tolerances& tol);

/// Grid classification by sign with a zero band of half-width zero_tol.
/// decreasing_type is true when the profile could be the restriction of a
/// decreasing-type sign change: positives first, negatives last, and at most
/// one zero run, which must sit strictly between them.
struct SignProfile {
  std::vector<std::size_t> positive, zero, negative;
  bool decreasing_type = false;
};

SignProfile sign_profile(const RealFn& f, std::span<const double> grid,
                         double zero_tol);

}  // namespace psilab
