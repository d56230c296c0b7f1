#pragma once

#include <functional>
#include <string>
#include <vector>

#include "psilab/estimate.hpp"
#include "psilab/sample.hpp"
#include "psilab/score.hpp"

namespace psilab {

enum class Provenance { FromScoreFamily, FromTable, Builtin };

/// Black-box estimator over multisets: the object the axiom checks probe.
struct EstimatorOracle {
  std::string name;
  Provenance provenance = Provenance::Builtin;
  ParameterInterval range = ParameterInterval::whole_line();
  std::function<double(const WeightedSample&)> eval;
};

/// Estimator over ordered lists. Oracles built by collapsing the list to a
/// multiset are symmetric by construction and say so, letting symmetry
/// checks short-circuit honestly.
struct ListEstimator {
  std::string name;
  bool symmetric_by_construction = false;
  std::function<double(const std::vector<Observation>&)> eval;
};

/// Wraps estimate(); throws psilab::error if the sign-change search fails
/// (Plateau / NoBracket), with the offending sample in the message.
EstimatorOracle oracle_from_score(const ScoreFamily& psi,
                                  const Tolerances& tol);

/// List estimator that sums psi left to right in list order before
/// root-finding, so permutation invariance is a real property to test, not
/// an artifact of canonicalization.
ListEstimator list_oracle_from_score(const ScoreFamily& psi,
                                     const Tolerances& tol);

ListEstimator list_oracle_from_multiset(const EstimatorOracle& m);

/// Closed-form references: arithmetic, geometric, harmonic, median, max,
/// min, sum. Throws on unknown names.
EstimatorOracle builtin_oracle(const std::string& name);

/// Ordered-list references: arithmetic, first-biased
/// ((2 x_1 + x_2 + ... + x_n) / (n + 1)).
ListEstimator builtin_list_estimator(const std::string& name);

std::vector<std::string> builtin_oracle_names();

}  // namespace psilab
