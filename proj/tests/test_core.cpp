#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <vector>

#include "psilab/common.hpp"
#include "psilab/interval.hpp"
#include "psilab/observation.hpp"
#include "psilab/rng.hpp"
#include "psilab/sample.hpp"
#include "psilab/score.hpp"

using namespace psilab;

TEST_CASE("format_double round-trips exactly and stays short") {
  std::vector<double> values = {0.0,   -0.0,  0.1,   1.0 / 3.0, 2.0,
                                1e300, 1e-300, -42.5, 6.02214076e23};
  for (double v : values) {
    std::string s = format_double(v);
    double back = std::strtod(s.c_str(), nullptr);
    CHECK(back == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-0.5) == "-0.5");
}

TEST_CASE("observations: parse, kinds, accessors") {
  Observation r = Observation::parse("1.5");
  CHECK(r.is_real());
  CHECK(r.numeric() == 1.5);
  CHECK(r.label() == "1.5");

  Observation s = Observation::parse("north");
  CHECK(s.is_symbol());
  CHECK(s.label() == "north");
  CHECK_THROWS_AS((void)s.numeric(), error);

  CHECK_THROWS_AS((void)Observation::real(std::nan("")), error);

  // Exponent forms parse as reals.
  CHECK(Observation::parse("2e3").numeric() == 2000.0);
}

TEST_CASE("observation ordering: reals before symbols, exact comparisons") {
  Observation a = Observation::real(1.0);
  Observation b = Observation::real(2.0);
  Observation x = Observation::symbol("a");
  Observation y = Observation::symbol("b");
  CHECK(a < b);
  CHECK(a < x);   // any real precedes any symbol
  CHECK(b < x);
  CHECK(x < y);
  CHECK(!(x < a));
  CHECK(a == Observation::real(1.0));
  CHECK_FALSE(a == Observation::symbol("1"));
}

TEST_CASE("weighted samples canonicalize: sorted, merged, positive counts") {
  std::vector<Observation> xs = {Observation::real(3.0), Observation::real(1.0),
                                 Observation::real(3.0)};
  WeightedSample s = WeightedSample::from_list(xs);
  CHECK(s.size() == 3);
  CHECK(s.distinct() == 2);
  CHECK(s.entries()[0].first == Observation::real(1.0));
  CHECK(s.entries()[0].second == 1);
  CHECK(s.entries()[1].first == Observation::real(3.0));
  CHECK(s.entries()[1].second == 2);
  CHECK(s.min() == Observation::real(1.0));
  CHECK(s.max() == Observation::real(3.0));
  CHECK(s.to_string() == "{1, 3*2}");

  // from_pairs merges duplicate keys and rejects nonpositive counts.
  WeightedSample t = WeightedSample::from_pairs(
      {{Observation::real(3.0), 1}, {Observation::real(1.0), 1},
       {Observation::real(3.0), 1}});
  CHECK(t == s);
  CHECK_THROWS_AS(
      (void)WeightedSample::from_pairs({{Observation::real(1.0), 0}}), error);
  CHECK_THROWS_AS(
      (void)WeightedSample::from_pairs({{Observation::real(1.0), -2}}), error);
}

TEST_CASE("sample equality is multiset equality") {
  std::vector<Observation> a = {Observation::real(1.0), Observation::real(2.0),
                                Observation::real(2.0)};
  std::vector<Observation> b = {Observation::real(2.0), Observation::real(2.0),
                                Observation::real(1.0)};
  CHECK(WeightedSample::from_list(a) == WeightedSample::from_list(b));
  CHECK_FALSE(WeightedSample::from_list(a) ==
              WeightedSample::single(Observation::real(1.0)));
}

TEST_CASE("concat adds multiplicities; replicate scales them") {
  WeightedSample a = WeightedSample::single(Observation::real(1.0), 2);
  WeightedSample b = WeightedSample::from_pairs(
      {{Observation::real(1.0), 1}, {Observation::real(4.0), 3}});
  WeightedSample u = concat(a, b);
  CHECK(u.size() == 6);
  CHECK(u.entries()[0].second == 3);
  CHECK(u.entries()[1].second == 3);

  WeightedSample r = replicate(b, 3);
  CHECK(r.size() == 12);
  CHECK(r.entries()[0].second == 3);
  CHECK(r.entries()[1].second == 9);
  CHECK(replicate(b, 1) == b);
  CHECK_THROWS_AS((void)replicate(b, 0), error);

  // Union is commutative and associative on the canonical form.
  CHECK(concat(a, b) == concat(b, a));
  CHECK(concat(concat(a, b), r) == concat(a, concat(b, r)));
}

TEST_CASE("parameter intervals: strict membership and bounds") {
  ParameterInterval i = ParameterInterval::open(0.0, 1.0);
  CHECK(i.contains(0.5));
  CHECK_FALSE(i.contains(0.0));
  CHECK_FALSE(i.contains(1.0));
  CHECK(i.bounded());
  CHECK(i.default_seed() == 0.5);
  CHECK(i.to_string() == "(0, 1)");

  CHECK_THROWS_AS((void)ParameterInterval::open(1.0, 1.0), error);
  CHECK_THROWS_AS((void)ParameterInterval::open(2.0, 1.0), error);
  CHECK_THROWS_AS((void)ParameterInterval::open(std::nan(""), 1.0), error);

  ParameterInterval w = ParameterInterval::whole_line();
  CHECK(!w.bounded_below());
  CHECK(!w.bounded_above());
  CHECK(w.contains(-1e308));
  CHECK(w.default_seed() == 0.0);

  ParameterInterval p = ParameterInterval::positive_half_line();
  CHECK(p.bounded_below());
  CHECK_FALSE(p.contains(0.0));
  CHECK(p.default_seed() == 1.0);

  ParameterInterval above = {5.0, std::numeric_limits<double>::infinity()};
  CHECK(above.default_seed() == 6.0);
  ParameterInterval below = {-std::numeric_limits<double>::infinity(), -5.0};
  CHECK(below.default_seed() == -6.0);
}

TEST_CASE("tolerances validate their fields") {
  Tolerances tol;
  CHECK_NOTHROW(tol.validate());
  CHECK(tol.bracket_growth == 2.0);
  CHECK(tol.root_abs_tol == 1e-12);

  Tolerances bad = tol;
  bad.bracket_growth = 1.0;
  CHECK_THROWS_AS(bad.validate(), error);
  bad = tol;
  bad.root_abs_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), error);
  bad = tol;
  bad.max_bisect_steps = 0;
  CHECK_THROWS_AS(bad.validate(), error);
}

TEST_CASE("claims render as flag string") {
  Claims none;
  CHECK(none.to_string() == "-");
  Claims all{true, true, true};
  CHECK(all.to_string() == "CTZ");
  Claims just_t{false, true, false};
  CHECK(just_t.to_string() == "T");
}

TEST_CASE("rng is deterministic and stays in range") {
  Rng a(7);
  Rng b(7);
  for (int i = 0; i < 1000; ++i) {
    double u = a.unit();
    CHECK(u == b.unit());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  Rng c(7);
  for (int i = 0; i < 200; ++i) {
    double v = c.uniform(-2.0, 3.0);
    CHECK(v >= -2.0);
    CHECK(v < 3.0);
  }
  Rng d(9);
  for (int i = 0; i < 200; ++i) CHECK(d.index(5) < 5);

  // Different seeds diverge quickly.
  Rng e(1), f(2);
  bool differ = false;
  for (int i = 0; i < 8 && !differ; ++i) differ = e.next() != f.next();
  CHECK(differ);
}
