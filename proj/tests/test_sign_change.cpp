#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include <cmath>
#include <vector>

#include "psilab/common.hpp"
#include "psilab/rng.hpp"
#include "psilab/sign_change.hpp"

using namespace psilab;

namespace {

// Independent locator: scan a uniform grid for the last strictly positive
// point and the first strictly negative one after it. Deliberately naive;
// used to cross-check the bisection result.
double grid_scan_cross(const RealFn& f, double lo, double hi, long points) {
  double prev_t = lo;
  double prev_f = f(lo);
  for (long i = 1; i <= points; ++i) {
    double t = lo + (hi - lo) * double(i) / double(points);
    double ft = f(t);
    if (prev_f > 0.0 && ft < 0.0) return 0.5 * (prev_t + t);
    prev_t = t;
    prev_f = ft;
  }
  return std::nan("");
}

}  // namespace

TEST_CASE("bracket walk: geometric probes from the seed on an unbounded line") {
  RealFn f = [](double t) { return 100.0 - t; };
  Tolerances tol;
  BracketOutcome out =
      bracket_sign_change(f, ParameterInterval::whole_line(), 0.0, tol);
  REQUIRE(out.found);
  // The seed evaluates positive, so it is the left end as-is; the walk
  // doubles its offset rightward until the sign flips at 128.
  CHECK(out.lo == 0.0);
  CHECK(out.hi == 128.0);
  CHECK(out.f_lo == 100.0);
  CHECK(out.f_hi == -28.0);
  CHECK(out.evaluations == 9);
  std::vector<double> expected = {0, 1, 2, 4, 8, 16, 32, 64, 128};
  REQUIRE(out.probes.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(out.probes[i] == expected[i]);
}

TEST_CASE("bracket walk: a sign-qualifying seed is kept, never tightened") {
  RealFn f = [](double t) { return 1.0 - t; };
  Tolerances tol;
  BracketOutcome out =
      bracket_sign_change(f, ParameterInterval::open(0.0, 2.0), 1.5, tol);
  REQUIRE(out.found);
  CHECK(out.hi == 1.5);  // f(1.5) < 0: the seed itself is the right end
  CHECK(out.lo < 1.0);
  CHECK(out.f_lo > 0.0);
}

TEST_CASE("bracket walk: bounded ends are approached by halving") {
  // Positive only near the left end; the walk must close in on lo.
  RealFn f = [](double t) { return 0.05 - t; };
  Tolerances tol;
  BracketOutcome out =
      bracket_sign_change(f, ParameterInterval::open(0.0, 1.0), 0.5, tol);
  REQUIRE(out.found);
  CHECK(out.lo < 0.05);
  CHECK(out.hi == 0.5);
  // Probes toward the bounded end halve the remaining distance: 0.25, 0.125,
  // 0.0625, 0.03125 qualifies.
  CHECK(out.lo == 0.03125);
}

TEST_CASE("no sign change means NoBracket with the probe log retained") {
  RealFn f = [](double) { return 1.0; };
  Tolerances tol;
  SignChangeResult res =
      find_sign_change(f, ParameterInterval::open(0.0, 1.0), 0.5, tol);
  CHECK(res.status == SignChangeStatus::NoBracket);
  CHECK_FALSE(res.ok());
  CHECK(res.probe_log.size() >= 3);  // seed plus walks toward both ends
  CHECK(res.evaluations == long(res.probe_log.size()));
}

TEST_CASE("seed outside the domain is rejected") {
  RealFn f = [](double t) { return -t; };
  Tolerances tol;
  CHECK_THROWS_AS(
      (void)bracket_sign_change(f, ParameterInterval::open(0.0, 1.0), 2.0, tol),
      error);
}

TEST_CASE("locates the crossing of a smooth decreasing function") {
  RealFn f = [](double t) { return 1.0 - t; };
  Tolerances tol;
  SignChangeResult res =
      find_sign_change(f, ParameterInterval::open(-10.0, 10.0), 0.0, tol);
  REQUIRE(res.ok());
  CHECK(std::fabs(res.theta - 1.0) <= tol.root_abs_tol);
  CHECK(res.theta >= res.initial_lo);
  CHECK(res.theta <= res.initial_hi);
  CHECK(res.evaluations <= tol.max_bracket_steps + tol.max_bisect_steps + 8);
}

TEST_CASE("locates a jump crossing with no zero at all") {
  RealFn f = [](double t) {
    if (t < 0.3) return 1.0;
    if (t > 0.3) return -1.0;
    return 7.0;  // arbitrary value at the point itself
  };
  Tolerances tol;
  SignChangeResult res =
      find_sign_change(f, ParameterInterval::whole_line(), 0.0, tol);
  REQUIRE(res.status == SignChangeStatus::Located);
  CHECK(std::fabs(res.theta - 0.3) <= tol.root_abs_tol);
  // theta is the negative-side bracket end.
  CHECK(res.residual_at_theta < 0.0);
}

TEST_CASE("an isolated exact zero is certified by strict flanking signs") {
  RealFn f = [](double t) { return 2.0 - t; };
  Tolerances tol;
  SignChangeResult res =
      find_sign_change(f, ParameterInterval::open(0.0, 4.0), 2.0, tol);
  // Seed hits the root exactly: the walk brackets around it and the
  // midpoint lands back on 2 where f is exactly zero.
  REQUIRE(res.status == SignChangeStatus::ExactZero);
  CHECK(res.theta == 2.0);
  CHECK(res.residual_at_theta == 0.0);
  CHECK(res.bracket_lo < 2.0);
  CHECK(res.bracket_hi > 2.0);
}

TEST_CASE("a wide zero band is reported as a plateau") {
  // Sum of two sign scores: zero on all of (0, 1).
  auto sgn = [](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); };
  RealFn f = [&](double t) { return sgn(0.0 - t) + sgn(1.0 - t); };
  Tolerances tol;
  SignChangeResult res =
      find_sign_change(f, ParameterInterval::open(-5.0, 5.0), 0.25, tol);
  REQUIRE(res.status == SignChangeStatus::Plateau);
  CHECK_FALSE(res.ok());
  CHECK(res.plateau_lo >= 0.0);
  CHECK(res.plateau_hi <= 1.0);
  CHECK(res.plateau_hi - res.plateau_lo > tol.plateau_width_tol);
}

TEST_CASE("clipped two-point score flattens into the plateau [1, 9]") {
  auto clip = [](double v) { return std::clamp(v, -1.0, 1.0); };
  RealFn f = [&](double t) { return clip(0.0 - t) + clip(10.0 - t); };
  Tolerances tol;
  SignChangeResult res =
      find_sign_change(f, ParameterInterval::whole_line(), 5.0, tol);
  REQUIRE(res.status == SignChangeStatus::Plateau);
  CHECK(res.plateau_lo == 1.0);
  CHECK(res.plateau_hi == 9.0);
}

TEST_CASE("a shallow smooth crossing is located, not mistaken for a plateau") {
  // Slope 0.01: the |f| <= zero_tol band spans 2e-8, twenty times the
  // plateau threshold, yet the values inside it still vary and carry signs.
  RealFn f = [](double t) { return 0.01 * (8.3 - t); };
  Tolerances tol;
  SignChangeResult res =
      find_sign_change(f, ParameterInterval::whole_line(), 0.0, tol);
  REQUIRE(res.status == SignChangeStatus::Located);
  CHECK(std::fabs(res.theta - 8.3) <= 1e-11);
  CHECK(std::fabs(res.residual_at_theta) <= tol.zero_tol);
}

TEST_CASE("a signed rounding residue on a flat picks out the edge crossing") {
  // Constant -1e-16 on [1, 9]: numerically flat, but the sign still says
  // the crossing happened at the left edge.
  RealFn f = [](double t) {
    if (t < 1.0) return 1.0 - t;
    if (t > 9.0) return 9.0 - t;
    return -1e-16;
  };
  Tolerances tol;
  SignChangeResult res =
      find_sign_change(f, ParameterInterval::whole_line(), 5.0, tol);
  REQUIRE(res.status == SignChangeStatus::Located);
  CHECK(std::fabs(res.theta - 1.0) <= 1e-11);
}

TEST_CASE("narrow flat spots below the plateau threshold still locate") {
  // Flat zero stretch of width 1e-11, well under plateau_width_tol.
  RealFn f = [](double t) {
    if (t < 1.0) return 1.0 - t;
    if (t > 1.0 + 1e-11) return 1.0 + 1e-11 - t;
    return 0.0;
  };
  Tolerances tol;
  SignChangeResult res =
      find_sign_change(f, ParameterInterval::whole_line(), 0.0, tol);
  CHECK(res.status != SignChangeStatus::Plateau);
  CHECK(std::fabs(res.theta - 1.0) <= 1e-10);
}

TEST_CASE("agrees with a fine grid scan on random decreasing functions") {
  Rng rng(2024);
  Tolerances tol;
  for (int trial = 0; trial < 25; ++trial) {
    // Strictly decreasing: negated odd cubic plus slope, random shift.
    double a = 0.2 + rng.unit();          // linear slope
    double b = rng.unit();                // cubic weight
    double c = rng.uniform(-3.0, 3.0);    // crossing shift
    RealFn f = [=](double t) {
      double u = t - c;
      return -(a * u + b * u * u * u);
    };
    SignChangeResult res =
        find_sign_change(f, ParameterInterval::open(-8.0, 8.0),
                         rng.uniform(-7.0, 7.0), tol);
    REQUIRE(res.ok());
    double ref = grid_scan_cross(f, -8.0, 8.0, 1000000);
    REQUIRE(std::isfinite(ref));
    // Grid pitch dominates the tolerance budget.
    CHECK(std::fabs(res.theta - ref) <= 16.0 / 1e6 + tol.root_abs_tol);
  }
}

TEST_CASE("located theta always lies inside the initial bracket") {
  Rng rng(5);
  Tolerances tol;
  for (int trial = 0; trial < 50; ++trial) {
    double root = rng.uniform(-50.0, 50.0);
    RealFn f = [=](double t) { return root - t; };
    SignChangeResult res = find_sign_change(
        f, ParameterInterval::whole_line(), rng.uniform(-60.0, 60.0), tol);
    REQUIRE(res.ok());
    CHECK(res.theta >= res.initial_lo);
    CHECK(res.theta <= res.initial_hi);
    CHECK(std::fabs(res.theta - root) <= tol.root_abs_tol);
  }
}

TEST_CASE("sign profile classifies grid points and checks the sign pattern") {
  Tolerances tol;

  std::vector<double> grid = {-2.0, -1.0, 0.0, 1.0, 2.0};
  SignProfile p =
      sign_profile([](double t) { return 1.0 - t * t; }, grid, tol.zero_tol);
  CHECK(p.positive == std::vector<std::size_t>{2});
  CHECK(p.zero == std::vector<std::size_t>{1, 3});
  CHECK(p.negative == std::vector<std::size_t>{0, 4});
  CHECK_FALSE(p.decreasing_type);  // positive region is not a prefix

  std::vector<double> grid2 = {0.0, 1.0, 2.0};
  SignProfile q =
      sign_profile([](double t) { return 1.0 - t; }, grid2, tol.zero_tol);
  CHECK(q.positive == std::vector<std::size_t>{0});
  CHECK(q.zero == std::vector<std::size_t>{1});
  CHECK(q.negative == std::vector<std::size_t>{2});
  CHECK(q.decreasing_type);

  SignProfile z = sign_profile([](double) { return 0.0; }, grid2, tol.zero_tol);
  CHECK(z.zero.size() == 3);
  CHECK_FALSE(z.decreasing_type);  // no strict signs at all
}
