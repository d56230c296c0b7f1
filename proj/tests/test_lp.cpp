#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include <cmath>
#include <vector>

#include "psilab/common.hpp"
#include "psilab/lp.hpp"

using namespace psilab;

TEST_CASE("box maximum lands on the corner") {
  // max x + y  st  x <= 2, y <= 3.
  lp::Result r = lp::solve_max({{1, 0}, {0, 1}}, {2, 3}, {1, 1});
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(std::fabs(r.objective - 5.0) <= 1e-9);
  REQUIRE(r.x.size() == 2);
  CHECK(std::fabs(r.x[0] - 2.0) <= 1e-9);
  CHECK(std::fabs(r.x[1] - 3.0) <= 1e-9);
}

TEST_CASE("coupled constraints pick the crossing vertex") {
  // max 2x + 3y  st  x + y <= 4, x + 3y <= 6: the two lines cross at (3, 1)
  // and beat both axis corners (8 and 6) with 9.
  lp::Result r = lp::solve_max({{1, 1}, {1, 3}}, {4, 6}, {2, 3});
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(std::fabs(r.objective - 9.0) <= 1e-9);
  CHECK(std::fabs(r.x[0] - 3.0) <= 1e-9);
  CHECK(std::fabs(r.x[1] - 1.0) <= 1e-9);
}

TEST_CASE("negative right-hand sides route through a feasibility phase") {
  // max x  st  -x <= -1 (so x >= 1), x <= 3.
  lp::Result r = lp::solve_max({{-1}, {1}}, {-1, 3}, {1});
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(std::fabs(r.objective - 3.0) <= 1e-9);

  // Feasible region pinched to the single point x = 1.
  lp::Result point = lp::solve_max({{-1}, {1}}, {-1, 1}, {1});
  REQUIRE(point.status == lp::Status::Optimal);
  CHECK(std::fabs(point.objective - 1.0) <= 1e-9);
  CHECK(std::fabs(point.x[0] - 1.0) <= 1e-9);
}

TEST_CASE("contradictory constraints are infeasible") {
  // x >= 2 and x <= 1 cannot hold together.
  lp::Result r = lp::solve_max({{-1}, {1}}, {-2, 1}, {1});
  CHECK(r.status == lp::Status::Infeasible);
}

TEST_CASE("an open direction of increase is unbounded") {
  // max x  st  -x <= 0: x may grow without limit.
  lp::Result r = lp::solve_max({{-1}}, {0}, {1});
  CHECK(r.status == lp::Status::Unbounded);

  // Same but the growth hides behind a second variable.
  lp::Result r2 = lp::solve_max({{1, -2}}, {1}, {0, 1});
  CHECK(r2.status == lp::Status::Unbounded);
}

TEST_CASE("degenerate ties do not cycle") {
  // Several constraints active at the optimum simultaneously.
  lp::Result r = lp::solve_max(
      {{1, 1}, {1, 1}, {1, 0}, {0, 1}}, {2, 2, 1, 1}, {1, 1});
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(std::fabs(r.objective - 2.0) <= 1e-9);
}

TEST_CASE("zero objective reports a feasible point") {
  lp::Result r = lp::solve_max({{1, 1}}, {4}, {0, 0});
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.objective == 0.0);
  CHECK(r.x[0] + r.x[1] <= 4.0 + 1e-9);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS((void)lp::solve_max({{1, 1}}, {1, 2}, {1, 1}), error);
  CHECK_THROWS_AS((void)lp::solve_max({{1}}, {1}, {}), error);
  CHECK_THROWS_AS((void)lp::solve_max({{1, 1, 1}}, {1}, {1, 1}), error);
}

TEST_CASE("separation-shaped instance: symmetric coefficients, unit margin") {
  // Variables u0, u1 in [0, 2] and margin e; multiset rows for the pair
  // alphabet with level between the two symbols. The optimum pushes the
  // columns to opposite box ends with e = 1.
  //
  // rows (A-side, sums must sit at least e below the count):
  //   u0 + e <= 1, 2 u0 + e <= 2, 3 u0 + e <= 3, 2 u0 + u1 + e <= 3
  // rows (B-side, mirrored):
  //   -u1 + e <= -1, -2 u1 + e <= -2, -u0 - 2 u1 + e <= -3
  // box: u0 <= 2, u1 <= 2.
  std::vector<std::vector<double>> rows = {
      {1, 0, 1},  {2, 0, 1},  {3, 0, 1},  {2, 1, 1},
      {0, -1, 1}, {0, -2, 1}, {-1, -2, 1}, {1, 0, 0}, {0, 1, 0}};
  std::vector<double> rhs = {1, 2, 3, 3, -1, -2, -3, 2, 2};
  lp::Result r = lp::solve_max(rows, rhs, {0, 0, 1});
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(std::fabs(r.objective - 1.0) <= 1e-9);
  CHECK(std::fabs(r.x[0] - 0.0) <= 1e-9);  // c0 = u0 - 1 = -1
  CHECK(std::fabs(r.x[1] - 2.0) <= 1e-9);  // c1 = u1 - 1 = +1
}
