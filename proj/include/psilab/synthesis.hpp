#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psilab/oracle.hpp"
#include "psilab/sample.hpp"
#include "psilab/score.hpp"

namespace psilab {

// Tabulated score family on a finite alphabet and parameter grid, oriented
// decreasing-type: for every tabulated multiset s the score sum is positive
// at grid points left of mu(s) and negative right of it. Between grid points
// eval() snaps to the nearest column.
struct PsiTable {
  std::vector<Observation> alphabet;
  std::vector<double> theta_grid;
  std::vector<std::vector<double>> values;  // [alphabet index][grid index]
  std::vector<double> margins;              // separation achieved per grid point
  double boundary_tol = 1e-9;

  double eval(const Observation& x, double t) const;
  ScoreFamily as_score_family(std::string name) const;
};

/// Nonnegative integer weights over tabulated multisets on both sides of a
/// level whose weighted multiplicity vectors coincide, so no score column
/// can separate the sides: the sum of the below-level sign conditions
/// contradicts the sum of the above-level ones.
struct InfeasibilityCertificate {
  double t = 0.0;
  std::vector<std::pair<WeightedSample, std::int64_t>> below;  // mu < t
  std::vector<std::pair<WeightedSample, std::int64_t>> above;  // mu > t
  std::string witness_text;

  /// Re-checks the combination in exact int64 arithmetic.
  bool revalidate(std::span<const Observation> alphabet) const;
};

struct SynthesisResult {
  bool feasible = false;
  PsiTable table;  // meaningful only when feasible
  std::optional<InfeasibilityCertificate> certificate;
  std::string note;
  long multiset_count = 0;
  std::vector<long> boundary_drops;  // per grid point
};

/// For each grid point t, solves
///   maximize epsilon  s.t.  sum_x m_s(x) c_x <= -epsilon  (mu(s) < t)
///                           sum_x m_s(x) c_x >= +epsilon  (mu(s) > t)
///                           -1 <= c_x <= 1, epsilon >= 0
/// over every multiset of size <= max_size, dropping multisets with
/// |mu(s) - t| <= boundary_tol. A positive optimum at every t yields a
/// PsiTable whose columns are the solutions c (already decreasing-type: the
/// below-level constraint forces negative score sums past the estimate).
/// A zero optimum yields an InfeasibilityCertificate instead.
SynthesisResult synthesize_psi(const EstimatorOracle& m,
                               std::span<const Observation> alphabet,
                               std::span<const double> theta_grid,
                               int max_size, double boundary_tol = 1e-9);

struct VerifyReport {
  long checked = 0;
  long boundary_skipped = 0;
  struct Violation {
    WeightedSample s;
    double t = 0.0;
    double sum = 0.0;
    int expected_sign = 0;
  };
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Independent sweep: re-enumerates the multisets, re-evaluates mu with the
/// oracle, and checks the sign of every tabulated score sum against the side
/// of the level it should fall on.
VerifyReport verify_synthesis(const PsiTable& table, const EstimatorOracle& m,
                              std::span<const Observation> alphabet,
                              int max_size);

/// Plain-text table file: header (orientation, boundary_tol, alphabet,
/// theta_grid, margins) then one value row per observation. Doubles are
/// written shortest-round-trip, so read(write(x)) == x exactly.
void write_psi_table(const PsiTable& table, const std::string& path);
PsiTable read_psi_table(const std::string& path);

}  // namespace psilab
