#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "psilab/catalog.hpp"
#include "psilab/oracle.hpp"
#include "psilab/rng.hpp"
#include "psilab/sample.hpp"

namespace psilab {

enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(Verdict v);

/// How the randomized checks draw inputs. When `pool` is nonempty,
/// observations come from it; otherwise uniform reals in
/// [range_lo, range_hi]. Identical configs (same seed) reproduce identical
/// reports.
struct SamplerConfig {
  std::uint64_t seed = 1;
  std::vector<Observation> pool;
  double range_lo = 0.0;
  double range_hi = 1.0;
  int max_block = 6;  // largest sample size drawn
  long trials = 1000;
  double tolerance = 1e-9;
  long min_trials_for_pass = 1;
};

/// A concrete, re-checkable counterexample: re-evaluating the stored inputs
/// reproduces the stored values within 1e-12.
struct Witness {
  std::string relation;
  std::vector<std::vector<Observation>> lists;
  std::vector<WeightedSample> samples;
  std::vector<double> values;
  double violation = 0.0;
  long trial = -1;
};

struct AxiomReport {
  std::string axiom;
  Verdict verdict = Verdict::Inconclusive;
  long trials = 0;
  std::vector<Witness> witnesses;  // capped at kMaxWitnesses
  double max_violation = 0.0;
  std::string note;
  SamplerConfig config;
  std::vector<std::pair<double, double>> trace;  // (index, value) series
  std::vector<std::pair<std::string, double>> metrics;

  static constexpr std::size_t kMaxWitnesses = 32;
};

/// Compares M over random lists against random permutations of the same
/// list. Multiset-backed estimators pass by construction (noted, zero
/// trials).
AxiomReport check_symmetry(const ListEstimator& m, const SamplerConfig& cfg);

/// min(M(r), M(s)) <= M(r ++ s) <= max(M(r), M(s)) on random pairs; with
/// `strict`, both inequalities must hold with margin > tolerance whenever
/// |M(r) - M(s)| > tolerance.
AxiomReport check_internality(const EstimatorOracle& m,
                              const SamplerConfig& cfg, bool strict);

/// gap(n) = | M(replicate(x, n) ++ {y}) - M(x) | along the schedule.
/// Pass: gaps nonincreasing over the last half and final gap <= tolerance.
/// Fail: gaps bounded above tolerance over the last half. Otherwise
/// Inconclusive. The (n, gap) series lands in report.trace.
AxiomReport check_asymptotic_idempotency(const EstimatorOracle& m,
                                         const WeightedSample& x,
                                         const Observation& y,
                                         std::span<const std::int64_t> schedule,
                                         double tolerance);

/// Default schedule 1, 2, 4, ..., 2^15.
std::vector<std::int64_t> default_idempotency_schedule();

/// Mean-sequence axioms on a compact interval [lo, hi]: per-coordinate
/// strict monotonicity, continuity under shrinking perturbations,
/// reflexivity, and block replacement by the block's own mean. Four
/// sub-reports in that order.
std::vector<AxiomReport> kolmogorov_suite(const EstimatorOracle& m, double lo,
                                          double hi, const SamplerConfig& cfg);

/// Two generators induce the same mean family iff one is an affine image of
/// the other. Compares the means on random samples and corroborates with a
/// least-squares affine fit f ~ a*g + b (fit in report.metrics).
AxiomReport check_generator_equivalence(const Generator& f, const Generator& g,
                                        const SamplerConfig& cfg);

/// Shared sampling helpers (deterministic given the Rng state).
Observation sample_observation(const SamplerConfig& cfg, Rng& rng);
std::vector<Observation> sample_list(const SamplerConfig& cfg, Rng& rng,
                                     int min_n);
WeightedSample sample_weighted(const SamplerConfig& cfg, Rng& rng);

}  // namespace psilab
