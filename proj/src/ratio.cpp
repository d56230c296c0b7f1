#include "psilab/ratio.hpp"

#include <cmath>
#include <limits>

#include "psilab/common.hpp"

namespace psilab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

EstimateReport estimate_or_throw(const ScoreFamily& psi,
                                 const WeightedSample& s,
                                 const Tolerances& tol, const char* role) {
  EstimateReport rep = estimate(psi, s, tol);
  if (!rep.ok()) {
    throw error(std::string(role) + " block estimate failed with status " +
                to_string(rep.sign_change.status) + " on " + s.to_string());
  }
  return rep;
}

double max_adjacent_jump(const std::vector<double>& values) {
  double jump = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (std::isnan(values[i - 1]) || std::isnan(values[i])) continue;
    jump = std::max(jump, std::fabs(values[i] - values[i - 1]));
  }
  return jump;
}

}  // namespace

std::optional<double> ratio_fn(const ScoreFamily& psi,
                               const WeightedSample& x_block,
                               const WeightedSample& y_block, double t,
                               double zero_tol) {
  double denom = score_sum(psi, y_block, t);
  if (std::fabs(denom) <= zero_tol) return std::nullopt;
  return -score_sum(psi, x_block, t) / denom;
}

RatioDiagnostic audit_ratio(const ScoreFamily& psi,
                            const WeightedSample& x_block,
                            const WeightedSample& y_block, int grid_size,
                            const Tolerances& tol) {
  if (grid_size < 2) throw error("audit_ratio: need at least 2 grid points");
  RatioDiagnostic diag;
  diag.x_estimate = estimate_or_throw(psi, x_block, tol, "x").theta;
  diag.y_estimate = estimate_or_throw(psi, y_block, tol, "y").theta;
  diag.domain_gap = diag.y_estimate;
  if (std::fabs(diag.x_estimate - diag.y_estimate) <= tol.root_abs_tol) {
    throw error("audit_ratio: block estimates coincide at " +
                format_double(diag.x_estimate) +
                "; the gap interval is degenerate");
  }

  double lo = std::min(diag.x_estimate, diag.y_estimate);
  double hi = std::max(diag.x_estimate, diag.y_estimate);
  double w = hi - lo;

  diag.grid.reserve(grid_size);
  diag.values.reserve(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    double t = lo + w * (i + 1) / (grid_size + 1.0);
    diag.grid.push_back(t);
    auto v = ratio_fn(psi, x_block, y_block, t, tol.zero_tol);
    diag.values.push_back(v ? *v : kNaN);
  }

  bool any_defined = false;
  bool positive = true;
  bool monotone = true;
  bool want_increasing = diag.x_estimate < diag.y_estimate;
  double prev = kNaN;
  for (double v : diag.values) {
    if (std::isnan(v)) continue;
    any_defined = true;
    if (!(v > 0.0)) positive = false;
    if (!std::isnan(prev)) {
      bool ordered = want_increasing ? v > prev : v < prev;
      if (!ordered) monotone = false;
    }
    prev = v;
  }
  diag.positive_on_gap_interval = any_defined && positive;
  diag.monotone_on_gap_interval = any_defined && monotone;

  // Continuity probe: resample the same coarse span four times as densely
  // (the closed span, not the full open interval, so an estimate sitting at
  // an endpoint singularity does not dominate) and compare the largest
  // adjacent jump.
  diag.coarse_max_jump = max_adjacent_jump(diag.values);
  int refined_n = 4 * grid_size;
  std::vector<double> refined;
  refined.reserve(refined_n);
  double span_lo = diag.grid.front();
  double span_hi = diag.grid.back();
  for (int j = 0; j < refined_n; ++j) {
    double t = span_lo + (span_hi - span_lo) * j / (refined_n - 1.0);
    auto v = ratio_fn(psi, x_block, y_block, t, tol.zero_tol);
    refined.push_back(v ? *v : kNaN);
  }
  diag.refined_max_jump = max_adjacent_jump(refined);
  diag.continuity_consistent =
      diag.refined_max_jump <= 0.5 * diag.coarse_max_jump;
  return diag;
}

ScoreFamily normalize_psi(const ScoreFamily& psi_star, const Observation& u,
                          const Observation& v, const Tolerances& tol) {
  if (!psi_star.eval) throw error("normalize_psi: score family has no eval");
  double theta_u =
      estimate_or_throw(psi_star, WeightedSample::single(u), tol, "u").theta;
  double theta_v =
      estimate_or_throw(psi_star, WeightedSample::single(v), tol, "v").theta;
  if (std::fabs(theta_u - theta_v) <= tol.root_abs_tol) {
    throw error("normalize_psi: anchors " + u.label() + " and " + v.label() +
                " have indistinguishable one-point estimates");
  }

  ScoreFamily psi;
  psi.name = psi_star.name + ":normalized";
  psi.domain = psi_star.domain;
  psi.claims = psi_star.claims;
  auto eval = psi_star.eval;
  psi.eval = [eval, u, v](const Observation& x, double t) {
    double denom = std::fabs(eval(u, t)) + std::fabs(eval(v, t));
    return eval(x, t) / denom;
  };
  return psi;
}

ZLimitReport z_via_ratio_limits(const ScoreFamily& psi,
                                const WeightedSample& x_block,
                                const Observation& y, const Tolerances& tol,
                                double limit_tol) {
  WeightedSample y_block = WeightedSample::single(y);
  EstimateReport ex = estimate_or_throw(psi, x_block, tol, "x");
  EstimateReport ey = estimate_or_throw(psi, y_block, tol, "y");
  if (!(ey.theta > ex.theta)) {
    throw error("z_via_ratio_limits: needs the one-point estimate of " +
                y.label() + " above the block estimate " +
                format_double(ex.theta));
  }

  ZLimitReport rep;
  rep.theta = ex.theta;
  rep.y_estimate = ey.theta;
  double width = ex.sign_change.initial_hi - ex.sign_change.initial_lo;
  rep.h0 = width * 1e3 * tol.root_abs_tol;
  if (!(rep.h0 > 0.0)) rep.h0 = 1e3 * tol.root_abs_tol;

  double h = rep.h0;
  for (int j = 0; j <= 20; ++j) {
    double tl = rep.theta - h;
    double tr = rep.theta + h;
    if (psi.domain.contains(tl)) {
      if (auto v = ratio_fn(psi, x_block, y_block, tl, tol.zero_tol))
        rep.left_series.push_back(*v);
    }
    if (psi.domain.contains(tr)) {
      if (auto v = ratio_fn(psi, x_block, y_block, tr, tol.zero_tol))
        rep.right_series.push_back(*v);
    }
    h *= 0.5;
  }
  rep.left_limit = rep.left_series.empty()
                       ? std::numeric_limits<double>::quiet_NaN()
                       : rep.left_series.back();
  rep.right_limit = rep.right_series.empty()
                        ? std::numeric_limits<double>::quiet_NaN()
                        : rep.right_series.back();
  rep.direct_residual = std::fabs(score_sum(psi, x_block, rep.theta));
  rep.z_consistent = std::fabs(rep.left_limit) <= limit_tol &&
                     std::fabs(rep.right_limit) <= limit_tol;
  return rep;
}

}  // namespace psilab
