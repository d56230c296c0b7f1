#include "psilab/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "psilab/common.hpp"

namespace psilab {

Generator gen_identity() {
  Generator g;
  g.name = "id";
  g.domain = ParameterInterval::whole_line();
  g.increasing = true;
  g.f = [](double x) { return x; };
  g.f_inverse = [](double y) { return y; };
  return g;
}

Generator gen_log() {
  Generator g;
  g.name = "ln";
  g.domain = ParameterInterval::positive_half_line();
  g.increasing = true;
  g.f = [](double x) { return std::log(x); };
  g.f_inverse = [](double y) { return std::exp(y); };
  return g;
}

Generator gen_reciprocal() {
  Generator g;
  g.name = "recip";
  g.domain = ParameterInterval::positive_half_line();
  g.increasing = false;
  g.f = [](double x) { return 1.0 / x; };
  g.f_inverse = [](double y) { return 1.0 / y; };
  return g;
}

Generator gen_power(double p) {
  if (p == 0.0 || std::isnan(p) || std::isinf(p))
    throw error("gen_power: exponent must be finite and nonzero");
  Generator g;
  g.name = "pow:" + format_double(p);
  g.domain = ParameterInterval::positive_half_line();
  g.increasing = p > 0.0;
  g.f = [p](double x) { return std::pow(x, p); };
  g.f_inverse = [p](double y) { return std::pow(y, 1.0 / p); };
  return g;
}

void validate_generator(const Generator& g, int grid_points) {
  if (grid_points < 3) throw error("validate_generator: need at least 3 grid points");
  if (!g.f || !g.f_inverse) throw error("validate_generator: missing function");

  // Grid inside the domain: uniform when bounded, geometric offsets from the
  // finite end (or around 0) otherwise.
  std::vector<double> grid;
  grid.reserve(grid_points);
  if (g.domain.bounded()) {
    double w = g.domain.hi - g.domain.lo;
    for (int k = 1; k <= grid_points; ++k)
      grid.push_back(g.domain.lo + w * k / (grid_points + 1.0));
  } else if (g.domain.bounded_below()) {
    for (int k = 0; k < grid_points; ++k)
      grid.push_back(g.domain.lo + std::ldexp(1.0, k - grid_points / 2));
  } else if (g.domain.bounded_above()) {
    for (int k = 0; k < grid_points; ++k)
      grid.push_back(g.domain.hi - std::ldexp(1.0, grid_points / 2 - 1 - k));
  } else {
    for (int k = 0; k < grid_points; ++k)
      grid.push_back(k - (grid_points - 1) / 2.0);
  }

  double prev = 0.0;
  bool have_prev = false;
  for (double x : grid) {
    double y = g.f(x);
    if (!std::isfinite(y))
      throw error("generator " + g.name + ": f(" + format_double(x) +
                  ") is not finite");
    if (have_prev) {
      bool ordered = g.increasing ? y > prev : y < prev;
      if (!ordered)
        throw error("generator " + g.name +
                    ": values not strictly monotone near x = " +
                    format_double(x));
    }
    prev = y;
    have_prev = true;
    double back = g.f_inverse(y);
    if (!(std::fabs(back - x) <= 1e-10 * std::max(1.0, std::fabs(x))))
      throw error("generator " + g.name + ": inverse mismatch at x = " +
                  format_double(x) + " (round trip " + format_double(back) +
                  ")");
  }
}

ScoreFamily qa_score(const Generator& g) {
  validate_generator(g);
  ScoreFamily psi;
  psi.name = "qa:" + g.name;
  psi.domain = g.domain;
  psi.claims = {true, true, true};
  double sigma = g.increasing ? 1.0 : -1.0;
  auto f = g.f;
  psi.eval = [f, sigma](const Observation& x, double t) {
    return sigma * (f(x.numeric()) - f(t));
  };
  return psi;
}

double qa_mean(const Generator& g, const WeightedSample& s) {
  if (s.empty()) throw error("qa_mean: sample must be nonempty");
  double acc = 0.0;
  for (const auto& [obs, mult] : s.entries()) {
    double x = obs.numeric();
    if (!g.domain.contains(x))
      throw error("qa_mean: observation " + obs.label() + " outside " +
                  g.domain.to_string());
    acc += double(mult) * g.f(x);
  }
  return g.f_inverse(acc / double(s.size()));
}

ScoreFamily huber_score(double kappa) {
  if (!(kappa > 0.0)) throw error("huber_score: kappa must be positive");
  ScoreFamily psi;
  psi.name = "huber:" + format_double(kappa);
  psi.domain = ParameterInterval::whole_line();
  psi.claims = {true, false, false};
  psi.eval = [kappa](const Observation& x, double t) {
    return std::clamp(x.numeric() - t, -kappa, kappa);
  };
  return psi;
}

ScoreFamily arctan_score() {
  ScoreFamily psi;
  psi.name = "arctan";
  psi.domain = ParameterInterval::whole_line();
  psi.claims = {true, true, true};
  psi.eval = [](const Observation& x, double t) {
    return std::atan(x.numeric() - t);
  };
  return psi;
}

ScoreFamily median_score() {
  ScoreFamily psi;
  psi.name = "median";
  psi.domain = ParameterInterval::whole_line();
  psi.claims = {false, false, false};
  psi.eval = [](const Observation& x, double t) {
    double d = x.numeric() - t;
    if (d > 0.0) return 1.0;
    if (d < 0.0) return -1.0;
    return 0.0;
  };
  return psi;
}

ScoreFamily step_score() {
  ScoreFamily psi;
  psi.name = "step";
  psi.domain = ParameterInterval::whole_line();
  psi.claims = {false, true, false};
  psi.eval = [](const Observation& x, double t) {
    return t < x.numeric() ? 1.0 : -2.0;
  };
  return psi;
}

}  // namespace psilab
