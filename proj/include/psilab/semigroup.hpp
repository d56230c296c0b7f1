#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "psilab/axioms.hpp"
#include "psilab/oracle.hpp"
#include "psilab/sample.hpp"

namespace psilab {

/// The estimator viewed as a map on the multiset semigroup.
double mu(const EstimatorOracle& m, const WeightedSample& s);

/// Side of the level t: InA below (mu < t - tol), InB above
/// (mu > t + tol), Boundary within tol of t.
enum class Level { InA, InB, Boundary };

const char* to_string(Level l);

Level level_membership(const EstimatorOracle& m, const WeightedSample& s,
                       double t, double tol);

using PairSampler =
    std::function<std::pair<WeightedSample, WeightedSample>()>;

/// Deterministic sampler drawing two samples per call from the config's
/// pool or range, sizes 1..max_block.
PairSampler make_pool_pair_sampler(const SamplerConfig& cfg);

/// Draws pairs; whenever both land strictly on the same side of t, their
/// union must stay on that side. Each violating triple (r, s, r ++ s)
/// becomes a witness with the three values of mu.
AxiomReport closure_probe(const EstimatorOracle& m, double t,
                          const PairSampler& sampler, long trials, double tol);

struct CoreProbeResult {
  bool resolved = false;
  std::int64_t n = 0;  // smallest n with replicate(a, n) ++ s below level t
  std::int64_t n_max = 0;
};

/// Linear scan n = 1..n_max for the absorption exponent of a under s at
/// level t. Requires mu(a) strictly below t.
CoreProbeResult core_probe(const EstimatorOracle& m, double t,
                           const WeightedSample& a, const WeightedSample& s,
                           std::int64_t n_max, double tol);

/// All multisets over the alphabet with 1 <= size <= max_size, in a fixed
/// lexicographic order: C(max_size + k, k) - 1 of them for k distinct
/// symbols. Throws if that count exceeds `cap` (default 1e6) or the
/// alphabet has duplicates.
std::vector<WeightedSample> enumerate_multisets(
    std::span<const Observation> alphabet, int max_size,
    std::size_t cap = 1000000);

}  // namespace psilab
