#pragma once

#include <cstdint>

#include "psilab/sample.hpp"
#include "psilab/score.hpp"
#include "psilab/sign_change.hpp"

namespace psilab {

/// Multiplicity-weighted score sum  sum_x m(x) * psi(x, t)  over the
/// canonical entry order with compensated summation, so the value is
/// bit-identical for any input ordering and the cost depends only on the
/// number of distinct observations.
double score_sum(const ScoreFamily& psi, const WeightedSample& s, double t);

struct EstimateReport {
  SignChangeResult sign_change;
  double theta = std::numeric_limits<double>::quiet_NaN();
  double z_residual = std::numeric_limits<double>::quiet_NaN();
  std::int64_t n = 0;
  double seed = 0.0;
  // Set when the family claims a vanishing score sum but |z_residual|
  // exceeded zero_tol * n. Reported, never fatal.
  bool z_claim_violated = false;

  bool ok() const { return sign_change.ok(); }
};

/// Runs find_sign_change on the score sum. The bracketing seed is the
/// midrange of the observations when they are real-valued and the domain
/// contains them, otherwise the domain's default seed. Plateau and NoBracket
/// come back in the report; only malformed inputs throw.
EstimateReport estimate(const ScoreFamily& psi, const WeightedSample& s,
                        const Tolerances& tol);

/// | score_sum(a ++ b, t) - score_sum(a, t) - score_sum(b, t) |.
double homomorphism_residual(const ScoreFamily& psi, const WeightedSample& a,
                             const WeightedSample& b, double t);

}  // namespace psilab
