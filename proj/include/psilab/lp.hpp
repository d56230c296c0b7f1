#pragma once

#include <vector>

namespace psilab::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

/// Maximize c.x subject to A x <= b, x >= 0. Dense two-phase simplex with
/// Bland-style tie-breaking; built for the small instances the synthesis
/// step produces (a handful of columns, a few hundred rows).
Result solve_max(const std::vector<std::vector<double>>& A,
                 const std::vector<double>& b, const std::vector<double>& c);

}  // namespace psilab::lp
