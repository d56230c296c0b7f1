#include "psilab/estimate.hpp"

#include <cmath>

#include "psilab/common.hpp"

namespace psilab {

double score_sum(const ScoreFamily& psi, const WeightedSample& s, double t) {
  if (!psi.eval) throw error("score_sum: score family has no eval");
  // Neumaier accumulation over fma-split products, in canonical entry
  // order: the result is bit-identical for any presentation of the same
  // multiset, and additivity over disjoint unions holds to a few ulps of
  // the exact sums even under heavy cancellation.
  double sum = 0.0;
  double comp = 0.0;
  auto add = [&](double v) {
    double next = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - next) + v;
    } else {
      comp += (v - next) + sum;
    }
    sum = next;
  };
  for (const auto& [obs, mult] : s.entries()) {
    double w = double(mult);
    double v = psi.eval(obs, t);
    double p = w * v;
    add(p);
    double p_err = std::fma(w, v, -p);
    if (p_err != 0.0) add(p_err);
  }
  return sum + comp;
}

EstimateReport estimate(const ScoreFamily& psi, const WeightedSample& s,
                        const Tolerances& tol) {
  if (s.empty()) throw error("estimate: sample must be nonempty");
  if (!psi.eval) throw error("estimate: score family has no eval");
  tol.validate();

  EstimateReport rep;
  rep.n = s.size();

  bool all_real = true;
  for (const auto& [obs, mult] : s.entries()) all_real &= obs.is_real();

  double seed = psi.domain.default_seed();
  if (all_real) {
    double lo = s.min().numeric();
    double hi = s.max().numeric();
    if (psi.domain.contains(lo) && psi.domain.contains(hi)) {
      seed = lo + 0.5 * (hi - lo);
    }
  }
  rep.seed = seed;

  auto f = [&](double t) { return score_sum(psi, s, t); };
  rep.sign_change = find_sign_change(f, psi.domain, seed, tol);

  if (rep.sign_change.ok()) {
    rep.theta = rep.sign_change.theta;
    rep.z_residual = rep.sign_change.residual_at_theta;
    if (psi.claims.z &&
        std::fabs(rep.z_residual) > tol.zero_tol * double(rep.n)) {
      rep.z_claim_violated = true;
    }
  }
  return rep;
}

double homomorphism_residual(const ScoreFamily& psi, const WeightedSample& a,
                             const WeightedSample& b, double t) {
  double joint = score_sum(psi, concat(a, b), t);
  double split = score_sum(psi, a, t) + score_sum(psi, b, t);
  return std::fabs(joint - split);
}

}  // namespace psilab
