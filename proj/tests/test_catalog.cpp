#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include <cmath>
#include <vector>

#include "psilab/catalog.hpp"
#include "psilab/common.hpp"
#include "psilab/estimate.hpp"
#include "psilab/rng.hpp"

using namespace psilab;

namespace {

WeightedSample reals(std::initializer_list<double> xs) {
  std::vector<Observation> obs;
  for (double x : xs) obs.push_back(Observation::real(x));
  return WeightedSample::from_list(obs);
}

}  // namespace

TEST_CASE("builtin generators validate; degenerate exponent is rejected") {
  CHECK_NOTHROW(validate_generator(gen_identity()));
  CHECK_NOTHROW(validate_generator(gen_log()));
  CHECK_NOTHROW(validate_generator(gen_reciprocal()));
  CHECK_NOTHROW(validate_generator(gen_power(2.0)));
  CHECK_NOTHROW(validate_generator(gen_power(-1.0)));
  CHECK_NOTHROW(validate_generator(gen_power(0.5)));
  CHECK_THROWS_AS((void)gen_power(0.0), error);
  CHECK_THROWS_AS((void)gen_power(std::nan("")), error);

  // A broken inverse is caught by validation.
  Generator bad = gen_identity();
  bad.f_inverse = [](double y) { return y + 0.1; };
  CHECK_THROWS_AS(validate_generator(bad), error);
}

TEST_CASE("generator-backed families carry all three claims") {
  ScoreFamily id = qa_score(gen_identity());
  CHECK(id.name == "qa:id");
  CHECK(id.claims.c);
  CHECK(id.claims.t);
  CHECK(id.claims.z);
  CHECK(id.claims.to_string() == "CTZ");
  CHECK(qa_score(gen_log()).domain.lo == 0.0);
}

TEST_CASE("closed-form means match the estimator on small samples") {
  Tolerances tol;

  // Arithmetic: (1 + 2 + 3) / 3 = 2.
  EstimateReport r = estimate(qa_score(gen_identity()), reals({1, 2, 3}), tol);
  REQUIRE(r.ok());
  CHECK(std::fabs(r.theta - 2.0) <= 1e-10);
  CHECK(std::fabs(qa_mean(gen_identity(), reals({1, 2, 3})) - 2.0) <= 1e-12);

  // Geometric: sqrt(1 * 4) = 2.
  r = estimate(qa_score(gen_log()), reals({1, 4}), tol);
  REQUIRE(r.ok());
  CHECK(std::fabs(r.theta - 2.0) <= 1e-10);
  CHECK(std::fabs(qa_mean(gen_log(), reals({1, 4})) - 2.0) <= 1e-12);

  // Harmonic: 2 / (1/2 + 1/6) = 3.
  r = estimate(qa_score(gen_reciprocal()), reals({2, 6}), tol);
  REQUIRE(r.ok());
  CHECK(std::fabs(r.theta - 3.0) <= 1e-10);
  CHECK(std::fabs(qa_mean(gen_reciprocal(), reals({2, 6})) - 3.0) <= 1e-12);

  // Power 2: sqrt((1 + 49) / 2) = 5.
  r = estimate(qa_score(gen_power(2.0)), reals({1, 7}), tol);
  REQUIRE(r.ok());
  CHECK(std::fabs(r.theta - 5.0) <= 1e-10);
}

TEST_CASE("every quasi-arithmetic mean is reflexive on constant samples") {
  std::vector<Generator> gens = {gen_identity(), gen_log(), gen_reciprocal(),
                                 gen_power(2.0), gen_power(-1.0)};
  for (const Generator& g : gens) {
    WeightedSample s = WeightedSample::single(Observation::real(3.25), 7);
    CHECK(std::fabs(qa_mean(g, s) - 3.25) <= 1e-12);
    EstimateReport r = estimate(qa_score(g), s, Tolerances{});
    REQUIRE(r.ok());
    CHECK(std::fabs(r.theta - 3.25) <= 1e-10);
  }
}

TEST_CASE("affinely related generators give the same mean") {
  // 2*ln(x) + 5 generates the same mean as ln(x).
  Generator g;
  g.name = "affine-ln";
  g.domain = ParameterInterval::positive_half_line();
  g.increasing = true;
  g.f = [](double x) { return 2.0 * std::log(x) + 5.0; };
  g.f_inverse = [](double y) { return std::exp((y - 5.0) / 2.0); };
  CHECK_NOTHROW(validate_generator(g));

  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Observation> xs;
    int n = 1 + int(rng.index(6));
    for (int i = 0; i < n; ++i)
      xs.push_back(Observation::real(rng.uniform(0.1, 10.0)));
    WeightedSample s = WeightedSample::from_list(xs);
    CHECK(std::fabs(qa_mean(g, s) - qa_mean(gen_log(), s)) <= 1e-9);
  }
}

TEST_CASE("clipped score: midpoint for near pairs, plateau for far ones") {
  Tolerances tol;
  ScoreFamily h = huber_score(1.0);
  CHECK(h.name == "huber:1");
  CHECK(h.claims.to_string() == "C");
  CHECK(h.eval(Observation::real(5.0), 5.0) == 0.0);
  CHECK(h.eval(Observation::real(9.0), 5.0) == 1.0);   // clipped above
  CHECK(h.eval(Observation::real(-9.0), 5.0) == -1.0); // clipped below
  CHECK_THROWS_AS((void)huber_score(0.0), error);
  CHECK_THROWS_AS((void)huber_score(-1.0), error);

  EstimateReport near = estimate(h, reals({0, 1}), tol);
  REQUIRE(near.ok());
  CHECK(std::fabs(near.theta - 0.5) <= 1e-10);

  EstimateReport far = estimate(h, reals({0, 10}), tol);
  CHECK(far.sign_change.status == SignChangeStatus::Plateau);
  CHECK_FALSE(far.ok());
  CHECK(far.sign_change.plateau_lo == 1.0);
  CHECK(far.sign_change.plateau_hi == 9.0);
}

TEST_CASE("bounded smooth score keeps all claims and matches a grid scan") {
  Tolerances tol;
  ScoreFamily a = arctan_score();
  CHECK(a.claims.to_string() == "CTZ");

  EstimateReport r = estimate(a, reals({0, 2}), tol);
  REQUIRE(r.ok());
  CHECK(std::fabs(r.theta - 1.0) <= 1e-10);  // odd symmetry around 1
  CHECK(std::fabs(r.z_residual) <= tol.zero_tol);

  // Constant samples are fixed points.
  EstimateReport c = estimate(a, WeightedSample::single(Observation::real(4.0), 5), tol);
  REQUIRE(c.ok());
  CHECK(std::fabs(c.theta - 4.0) <= 1e-10);

  // Independent check on an asymmetric sample: bisect the score sum on a
  // measly grid refined once, no shared machinery.
  WeightedSample s = reals({0, 1, 5});
  auto fsum = [&](double t) {
    double acc = 0.0;
    for (const auto& [obs, mult] : s.entries())
      acc += double(mult) * a.eval(obs, t);
    return acc;
  };
  double lo = 0.0, hi = 5.0;
  for (int i = 0; i < 1000000; ++i) {
    double mid = 0.5 * (lo + hi);
    if (fsum(mid) > 0.0) lo = mid; else hi = mid;
    if (hi - lo < 1e-13) break;
  }
  EstimateReport r2 = estimate(a, s, tol);
  REQUIRE(r2.ok());
  CHECK(std::fabs(r2.theta - 0.5 * (lo + hi)) <= 1e-8);
  CHECK(std::fabs(r2.z_residual) <= tol.zero_tol * double(s.size()));
}

TEST_CASE("counting score: plateaus between points, zero residual at one") {
  Tolerances tol;
  ScoreFamily m = median_score();
  CHECK(m.claims.to_string() == "-");

  EstimateReport even = estimate(m, reals({0, 1}), tol);
  CHECK(even.sign_change.status == SignChangeStatus::Plateau);
  CHECK(even.sign_change.plateau_lo >= 0.0);
  CHECK(even.sign_change.plateau_hi <= 1.0);

  EstimateReport odd = estimate(m, reals({0, 1, 4}), tol);
  REQUIRE(odd.ok());
  CHECK(odd.theta == 1.0);
  CHECK(odd.z_residual == 0.0);

  EstimateReport rep = estimate(m, WeightedSample::single(Observation::real(3.0), 5), tol);
  REQUIRE(rep.ok());
  CHECK(rep.theta == 3.0);
}

TEST_CASE("asymmetric step score locates but never zeroes its sum") {
  Tolerances tol;
  ScoreFamily st = step_score();
  CHECK(st.claims.to_string() == "T");
  CHECK(st.eval(Observation::real(1.0), 0.0) == 1.0);   // t < x
  CHECK(st.eval(Observation::real(1.0), 1.0) == -2.0);  // t >= x
  CHECK(st.eval(Observation::real(1.0), 2.0) == -2.0);

  EstimateReport single = estimate(st, reals({3}), tol);
  REQUIRE(single.ok());
  CHECK(std::fabs(single.theta - 3.0) <= tol.root_abs_tol);
  CHECK(single.z_residual == -2.0);

  EstimateReport pair = estimate(st, reals({0, 1}), tol);
  REQUIRE(pair.ok());
  CHECK(std::fabs(pair.theta - 0.0) <= tol.root_abs_tol);
  CHECK(pair.z_residual == -1.0);

  // The sum only takes values k - 2m over the sample partition, so it can
  // never sit inside the zero band.
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    WeightedSample s = reals({rng.uniform(0.0, 1.0), rng.uniform(2.0, 3.0)});
    EstimateReport r = estimate(st, s, tol);
    REQUIRE(r.ok());
    CHECK(std::fabs(r.z_residual) >= 1.0);
  }
}
