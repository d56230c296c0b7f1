#pragma once

#include <optional>
#include <vector>

#include "psilab/estimate.hpp"
#include "psilab/sample.hpp"
#include "psilab/score.hpp"

namespace psilab {

/// f(t) = - score_sum(psi, x_block, t) / score_sum(psi, y_block, t).
/// Empty when the denominator is within zero_tol of zero.
std::optional<double> ratio_fn(const ScoreFamily& psi,
                               const WeightedSample& x_block,
                               const WeightedSample& y_block, double t,
                               double zero_tol);

// Behaviour of the block ratio on the open interval between the two block
// estimates. For a family whose score sums genuinely change sign, the ratio
// should be positive there, strictly monotone toward the y-block end, and
// continuous; the flags report what the grid actually shows.
struct RatioDiagnostic {
  double x_estimate = 0.0;
  double y_estimate = 0.0;
  double domain_gap = 0.0;  // parameter excluded by the denominator's root
  std::vector<double> grid;
  std::vector<double> values;
  bool positive_on_gap_interval = false;
  bool monotone_on_gap_interval = false;
  bool continuity_consistent = false;
  double coarse_max_jump = 0.0;
  double refined_max_jump = 0.0;  // same span, 4x the points
};

/// Evaluates the ratio on a uniform interior grid of `grid_size` points
/// between the block estimates. Continuity probe: the largest jump between
/// adjacent values must at least halve when the coarse grid's span is
/// re-sampled with 4x the points. Throws on equal block estimates
/// (|difference| <= root_abs_tol) or failed block estimation.
RatioDiagnostic audit_ratio(const ScoreFamily& psi,
                            const WeightedSample& x_block,
                            const WeightedSample& y_block, int grid_size,
                            const Tolerances& tol);

/// psi(x, t) = psi_star(x, t) / (|psi_star(u, t)| + |psi_star(v, t)|).
/// Scores of observations between the anchors land in [-1, 1] and no sign
/// change moves. Requires the one-point estimates of u and v to differ by
/// more than root_abs_tol (otherwise the denominator can vanish); claims
/// carry over unchanged.
ScoreFamily normalize_psi(const ScoreFamily& psi_star, const Observation& u,
                          const Observation& v, const Tolerances& tol);

struct ZLimitReport {
  double theta = 0.0;          // estimate of the x block
  double y_estimate = 0.0;     // one-point estimate of y
  double h0 = 0.0;             // initial probe offset
  std::vector<double> left_series, right_series;
  double left_limit = 0.0;
  double right_limit = 0.0;
  double direct_residual = 0.0;  // |score_sum(psi, x_block, theta)|
  bool z_consistent = false;
};

/// Estimates both one-sided limits of the block ratio f_{x,y} at the
/// x-block's estimate by evaluating at theta +- h along h = h0 * 2^-j,
/// j = 0..20, with h0 = (initial bracket width) * 1e3 * root_abs_tol so the
/// probes sit clear of the root-localisation noise floor. Both limits
/// within limit_tol of zero is the vanishing-score-sum signature.
ZLimitReport z_via_ratio_limits(const ScoreFamily& psi,
                                const WeightedSample& x_block,
                                const Observation& y, const Tolerances& tol,
                                double limit_tol);

}  // namespace psilab
