#pragma once

#include <functional>
#include <string>

#include "psilab/sample.hpp"
#include "psilab/score.hpp"

namespace psilab {

/// Strictly monotone continuous generator f on an open interval, with its
/// inverse. Backbone of the quasi-arithmetic families.
struct Generator {
  std::string name;
  ParameterInterval domain;
  bool increasing = true;
  std::function<double(double)> f;
  std::function<double(double)> f_inverse;
};

Generator gen_identity();
Generator gen_log();
Generator gen_reciprocal();
Generator gen_power(double p);  // x^p on (0, inf); p != 0

/// Samples a grid inside the generator's domain and checks strict
/// monotonicity in the declared direction plus f_inverse(f(x)) == x within
/// 1e-10. Throws on violation.
void validate_generator(const Generator& g, int grid_points = 33);

/// psi(x, t) = sigma * (f(x) - f(t)), sigma = +1 for increasing f, -1 for
/// decreasing, so the family is decreasing in t either way. Claims {C,T,Z}.
ScoreFamily qa_score(const Generator& g);

/// Closed-form quasi-arithmetic mean f^{-1}( sum w_i f(x_i) / n ).
double qa_mean(const Generator& g, const WeightedSample& s);

/// psi(x, t) = clamp(x - t, -kappa, kappa). Claims {C} only: flat score
/// sums appear as soon as the sample spread exceeds 2*kappa.
ScoreFamily huber_score(double kappa);

/// psi(x, t) = arctan(x - t). Claims {C,T,Z}.
ScoreFamily arctan_score();

/// psi(x, t) = sign(x - t). No claims; plateaus are generic.
ScoreFamily median_score();

/// psi(x, t) = +1 if t < x else -2. Claims {T}: a sign change always
/// exists, but the score sum never vanishes at it.
ScoreFamily step_score();

}  // namespace psilab
