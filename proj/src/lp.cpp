#include "psilab/lp.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "psilab/common.hpp"

namespace psilab::lp {

namespace {

constexpr double kEps = 1e-11;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense two-phase simplex on the standard tableau, with lowest-index
// tie-breaking on entering and leaving variables so degenerate instances
// cannot cycle. Row m holds the phase-2 objective, row m+1 the phase-1
// objective; column n is the artificial variable, column n+1 the constants.
struct Tableau {
  int m, n;
  std::vector<int> basic, nonbasic;
  std::vector<std::vector<double>> d;

  Tableau(const std::vector<std::vector<double>>& a,
          const std::vector<double>& b, const std::vector<double>& c)
      : m(static_cast<int>(b.size())),
        n(static_cast<int>(c.size())),
        basic(m),
        nonbasic(n + 1),
        d(m + 2, std::vector<double>(n + 2, 0.0)) {
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>(a[i].size()) != n)
        throw error("lp: constraint row has the wrong width");
      for (int j = 0; j < n; ++j) d[i][j] = a[i][j];
      basic[i] = n + i;
      d[i][n] = -1.0;
      d[i][n + 1] = b[i];
    }
    for (int j = 0; j < n; ++j) {
      nonbasic[j] = j;
      d[m][j] = -c[j];
    }
    nonbasic[n] = -1;
    d[m + 1][n] = 1.0;
  }

  void pivot(int r, int s) {
    double inv = 1.0 / d[r][s];
    for (int i = 0; i < m + 2; ++i) {
      if (i == r || std::fabs(d[i][s]) < kEps) continue;
      for (int j = 0; j < n + 2; ++j) {
        if (j != s) d[i][j] -= d[r][j] * d[i][s] * inv;
      }
    }
    for (int j = 0; j < n + 2; ++j) {
      if (j != s) d[r][j] *= inv;
    }
    for (int i = 0; i < m + 2; ++i) {
      if (i != r) d[i][s] *= -inv;
    }
    d[r][s] = inv;
    std::swap(basic[r], nonbasic[s]);
  }

  bool run(int phase) {
    int obj = phase == 1 ? m + 1 : m;
    while (true) {
      int s = -1;
      for (int j = 0; j <= n; ++j) {
        if (phase == 2 && nonbasic[j] == -1) continue;
        if (s == -1 || d[obj][j] < d[obj][s] ||
            (d[obj][j] == d[obj][s] && nonbasic[j] < nonbasic[s]))
          s = j;
      }
      if (d[obj][s] > -kEps) return true;
      int r = -1;
      for (int i = 0; i < m; ++i) {
        if (d[i][s] < kEps) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        double lhs = d[i][n + 1] * d[r][s];
        double rhs = d[r][n + 1] * d[i][s];
        if (lhs < rhs || (lhs == rhs && basic[i] < basic[r])) r = i;
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  Result solve() {
    Result res;
    if (m > 0) {
      int r = 0;
      for (int i = 1; i < m; ++i) {
        if (d[i][n + 1] < d[r][n + 1]) r = i;
      }
      if (d[r][n + 1] < -kEps) {
        pivot(r, n);
        if (!run(1) || d[m + 1][n + 1] < -kEps) {
          res.status = Status::Infeasible;
          return res;
        }
        for (int i = 0; i < m; ++i) {
          if (basic[i] != -1) continue;
          int s = -1;
          for (int j = 0; j <= n; ++j) {
            if (s == -1 || d[i][j] < d[i][s] ||
                (d[i][j] == d[i][s] && nonbasic[j] < nonbasic[s]))
              s = j;
          }
          pivot(i, s);
        }
      }
    }
    if (!run(2)) {
      res.status = Status::Unbounded;
      return res;
    }
    res.status = Status::Optimal;
    res.objective = d[m][n + 1];
    res.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i) {
      if (basic[i] < n) res.x[basic[i]] = d[i][n + 1];
    }
    return res;
  }
};

}  // namespace

Result solve_max(const std::vector<std::vector<double>>& A,
                 const std::vector<double>& b, const std::vector<double>& c) {
  if (A.size() != b.size()) throw error("lp: A and b disagree on row count");
  if (c.empty()) throw error("lp: no variables");
  return Tableau(A, b, c).solve();
}

}  // namespace psilab::lp
