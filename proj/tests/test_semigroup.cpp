#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "psilab/catalog.hpp"
#include "psilab/common.hpp"
#include "psilab/semigroup.hpp"

using namespace psilab;

namespace {

WeightedSample reals(std::initializer_list<double> xs) {
  std::vector<Observation> obs;
  for (double x : xs) obs.push_back(Observation::real(x));
  return WeightedSample::from_list(obs);
}

constexpr double kTol = 1e-9;

}  // namespace

TEST_CASE("level membership splits the parameter line around an estimate") {
  EstimatorOracle mean = builtin_oracle("arithmetic");
  WeightedSample s = reals({1, 3});
  CHECK(mu(mean, s) == 2.0);

  CHECK(level_membership(mean, s, 2.5, kTol) == Level::InA);
  CHECK(level_membership(mean, s, 2.0, kTol) == Level::Boundary);
  CHECK(level_membership(mean, s, 2.0 + 0.5e-9, kTol) == Level::Boundary);
  CHECK(level_membership(mean, s, 1.0, kTol) == Level::InB);

  CHECK(std::string(to_string(Level::InA)) == "below");
  CHECK(std::string(to_string(Level::InB)) == "above");
  CHECK(std::string(to_string(Level::Boundary)) == "boundary");
}

TEST_CASE("pool pair sampler is deterministic and respects the pool") {
  SamplerConfig cfg;
  cfg.seed = 5;
  cfg.pool = {Observation::real(0.25), Observation::real(0.75)};
  cfg.max_block = 3;

  PairSampler a = make_pool_pair_sampler(cfg);
  PairSampler b = make_pool_pair_sampler(cfg);
  for (int i = 0; i < 50; ++i) {
    auto [r1, s1] = a();
    auto [r2, s2] = b();
    CHECK(r1 == r2);
    CHECK(s1 == s2);
    CHECK(r1.size() >= 1);
    CHECK(r1.size() <= 3);
    for (const auto& [obs, mult] : r1.entries())
      CHECK((obs == cfg.pool[0] || obs == cfg.pool[1]));
  }
}

TEST_CASE("closure probe: means keep both level sides closed") {
  SamplerConfig cfg;
  cfg.seed = 1;
  cfg.range_lo = 0.0;
  cfg.range_hi = 1.0;

  for (double t : {0.3, 0.5, 0.7}) {
    AxiomReport rep = closure_probe(builtin_oracle("arithmetic"), t,
                                    make_pool_pair_sampler(cfg), 2000, kTol);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.witnesses.empty());
    // Both sides must actually have been exercised. Same-side pairs are
    // rare away from the centre (block means concentrate near 0.5), so the
    // floor is modest.
    double below = 0.0, above = 0.0;
    for (const auto& [k, v] : rep.metrics) {
      if (k == "below_pairs") below = v;
      if (k == "above_pairs") above = v;
    }
    CHECK(below > 10);
    CHECK(above > 10);
    if (t == 0.5) {
      CHECK(below > 100);
      CHECK(above > 100);
    }
  }

  AxiomReport mx = closure_probe(builtin_oracle("max"), 0.5,
                                 make_pool_pair_sampler(cfg), 2000, kTol);
  CHECK(mx.verdict == Verdict::Pass);  // max of two sub-t values stays sub-t
}

TEST_CASE("closure probe: totals escape their side") {
  // Both parts estimate below 0.4 yet their union estimates above it.
  EstimatorOracle total = builtin_oracle("sum");
  WeightedSample r = reals({0.2});
  WeightedSample s = reals({0.3});
  bool flip = false;
  PairSampler fixed = [&]() {
    flip = !flip;
    return flip ? std::make_pair(r, s) : std::make_pair(s, r);
  };
  AxiomReport rep = closure_probe(total, 0.4, fixed, 100, kTol);
  REQUIRE(rep.verdict == Verdict::Fail);
  REQUIRE_FALSE(rep.witnesses.empty());
  const Witness& w = rep.witnesses.front();
  REQUIRE(w.samples.size() == 3);
  CHECK(w.samples[0] == r);
  CHECK(w.samples[1] == s);
  CHECK(w.samples[2] == reals({0.2, 0.3}));
  CHECK(w.values[0] == 0.2);
  CHECK(w.values[1] == 0.3);
  CHECK(w.values[2] == 0.5);
  CHECK_FALSE(w.relation.find("left that side") == std::string::npos);
}

TEST_CASE("closure probe is inconclusive without same-side pairs") {
  // Pairs always straddle the level: nothing to test.
  WeightedSample lo = reals({0.1});
  WeightedSample hi = reals({0.9});
  PairSampler straddle = [&]() { return std::make_pair(lo, hi); };
  AxiomReport rep =
      closure_probe(builtin_oracle("arithmetic"), 0.5, straddle, 50, kTol);
  CHECK(rep.verdict == Verdict::Inconclusive);
}

TEST_CASE("absorption scan finds the swamping replicate count") {
  EstimatorOracle mean = builtin_oracle("arithmetic");

  // mean(n zeros + one 10) < 1 first at n = 10.
  CoreProbeResult r =
      core_probe(mean, 1.0, reals({0}), reals({10}), 100, kTol);
  REQUIRE(r.resolved);
  CHECK(r.n == 10);
  CHECK(r.n_max == 100);

  // Union with an empty-weight block: one copy suffices when s itself is
  // already below.
  CoreProbeResult one =
      core_probe(mean, 0.5, reals({0}), reals({0}), 100, kTol);
  REQUIRE(one.resolved);
  CHECK(one.n == 1);

  // max never dips below the fixed block's value: unresolved at n_max.
  CoreProbeResult stuck =
      core_probe(builtin_oracle("max"), 1.0, reals({0}), reals({10}), 50, kTol);
  CHECK_FALSE(stuck.resolved);
  CHECK(stuck.n_max == 50);

  // Precondition: a must estimate strictly below the level.
  CHECK_THROWS_AS((void)core_probe(mean, 1.0, reals({5}), reals({10}), 10, kTol),
                  error);
  CHECK_THROWS_AS((void)core_probe(mean, 1.0, reals({1}), reals({10}), 10, kTol),
                  error);
}

TEST_CASE("multiset enumeration: counts and exact contents") {
  std::vector<Observation> two = {Observation::symbol("a"),
                                  Observation::symbol("b")};
  std::vector<WeightedSample> m2 = enumerate_multisets(two, 2);
  REQUIRE(m2.size() == 5);
  std::set<std::string> got;
  for (const WeightedSample& s : m2) got.insert(s.to_string());
  std::set<std::string> want = {"{a}", "{b}", "{a*2}", "{a, b}", "{b*2}"};
  CHECK(got == want);

  std::vector<Observation> one = {Observation::real(7.0)};
  CHECK(enumerate_multisets(one, 3).size() == 3);

  std::vector<Observation> four = {
      Observation::real(1.0), Observation::real(2.0), Observation::real(3.0),
      Observation::real(4.0)};
  std::vector<WeightedSample> m4 = enumerate_multisets(four, 6);
  CHECK(m4.size() == 209);  // C(10, 4) - 1
  for (const WeightedSample& s : m4) {
    CHECK(s.size() >= 1);
    CHECK(s.size() <= 6);
  }
  // No duplicates in the enumeration.
  std::set<std::string> names;
  for (const WeightedSample& s : m4) names.insert(s.to_string());
  CHECK(names.size() == m4.size());
}

TEST_CASE("multiset enumeration guards its inputs") {
  std::vector<Observation> dup = {Observation::real(1.0),
                                  Observation::real(1.0)};
  CHECK_THROWS_AS((void)enumerate_multisets(dup, 2), error);

  std::vector<Observation> two = {Observation::symbol("a"),
                                  Observation::symbol("b")};
  CHECK_THROWS_AS((void)enumerate_multisets(two, 0), error);

  // C(15 + 15, 15) - 1 is far beyond a ten-thousand cap.
  std::vector<Observation> wide;
  for (int i = 0; i < 15; ++i)
    wide.push_back(Observation::real(double(i)));
  CHECK_THROWS_AS((void)enumerate_multisets(wide, 15, 10000), error);
}
