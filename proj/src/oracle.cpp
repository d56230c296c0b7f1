#include "psilab/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "psilab/common.hpp"
#include "psilab/sign_change.hpp"

namespace psilab {

namespace {

double require_located(const std::string& name, const WeightedSample& s,
                       const EstimateReport& rep) {
  if (!rep.ok()) {
    throw error("estimate under " + name + " failed with status " +
                std::string(to_string(rep.sign_change.status)) +
                " on sample " + s.to_string());
  }
  return rep.theta;
}

double numeric_or_throw(const Observation& x, const std::string& who) {
  if (!x.is_real()) {
    throw error(who + ": observation " + x.label() + " is not numeric");
  }
  return x.numeric();
}

}  // namespace

EstimatorOracle oracle_from_score(const ScoreFamily& psi,
                                  const Tolerances& tol) {
  if (!psi.eval) throw error("oracle_from_score: score family has no eval");
  EstimatorOracle m;
  m.name = psi.name;
  m.provenance = Provenance::FromScoreFamily;
  m.range = psi.domain;
  m.eval = [psi, tol](const WeightedSample& s) {
    EstimateReport rep = estimate(psi, s, tol);
    return require_located(psi.name, s, rep);
  };
  return m;
}

ListEstimator list_oracle_from_score(const ScoreFamily& psi,
                                     const Tolerances& tol) {
  if (!psi.eval) throw error("list_oracle_from_score: score family has no eval");
  ListEstimator m;
  m.name = psi.name + ":list";
  m.symmetric_by_construction = false;
  m.eval = [psi, tol](const std::vector<Observation>& xs) {
    if (xs.empty()) throw error("list estimator: list must be nonempty");
    auto f = [&psi, &xs](double t) {
      double acc = 0.0;
      for (const auto& x : xs) acc += psi.eval(x, t);
      return acc;
    };

    bool all_real = true;
    for (const auto& x : xs) all_real &= x.is_real();
    double seed = psi.domain.default_seed();
    if (all_real) {
      double lo = xs.front().numeric(), hi = lo;
      for (const auto& x : xs) {
        lo = std::min(lo, x.numeric());
        hi = std::max(hi, x.numeric());
      }
      if (psi.domain.contains(lo) && psi.domain.contains(hi)) {
        seed = lo + 0.5 * (hi - lo);
      }
    }

    SignChangeResult res = find_sign_change(f, psi.domain, seed, tol);
    if (!res.ok()) {
      throw error("list estimate under " + psi.name + " failed with status " +
                  std::string(to_string(res.status)));
    }
    return res.theta;
  };
  return m;
}

ListEstimator list_oracle_from_multiset(const EstimatorOracle& m) {
  ListEstimator le;
  le.name = m.name;
  le.symmetric_by_construction = true;
  auto eval = m.eval;
  le.eval = [eval](const std::vector<Observation>& xs) {
    return eval(WeightedSample::from_list(xs));
  };
  return le;
}

EstimatorOracle builtin_oracle(const std::string& name) {
  EstimatorOracle m;
  m.name = name;
  m.provenance = Provenance::Builtin;
  m.range = ParameterInterval::whole_line();

  if (name == "arithmetic") {
    m.eval = [](const WeightedSample& s) {
      if (s.empty()) throw error("arithmetic: sample must be nonempty");
      double acc = 0.0;
      for (const auto& [obs, mult] : s.entries())
        acc += double(mult) * numeric_or_throw(obs, "arithmetic");
      return acc / double(s.size());
    };
    return m;
  }
  if (name == "geometric") {
    m.range = ParameterInterval::positive_half_line();
    m.eval = [](const WeightedSample& s) {
      if (s.empty()) throw error("geometric: sample must be nonempty");
      double acc = 0.0;
      for (const auto& [obs, mult] : s.entries()) {
        double x = numeric_or_throw(obs, "geometric");
        if (!(x > 0.0)) throw error("geometric: needs positive observations");
        acc += double(mult) * std::log(x);
      }
      return std::exp(acc / double(s.size()));
    };
    return m;
  }
  if (name == "harmonic") {
    m.range = ParameterInterval::positive_half_line();
    m.eval = [](const WeightedSample& s) {
      if (s.empty()) throw error("harmonic: sample must be nonempty");
      double acc = 0.0;
      for (const auto& [obs, mult] : s.entries()) {
        double x = numeric_or_throw(obs, "harmonic");
        if (!(x > 0.0)) throw error("harmonic: needs positive observations");
        acc += double(mult) / x;
      }
      return double(s.size()) / acc;
    };
    return m;
  }
  if (name == "median") {
    m.eval = [](const WeightedSample& s) {
      if (s.empty()) throw error("median: sample must be nonempty");
      std::int64_t n = s.size();
      std::int64_t lower_rank = (n + 1) / 2;  // 1-based middle pair
      std::int64_t upper_rank = (n + 2) / 2;
      double lower = 0.0, upper = 0.0;
      std::int64_t seen = 0;
      for (const auto& [obs, mult] : s.entries()) {
        double x = numeric_or_throw(obs, "median");
        std::int64_t next = seen + mult;
        if (seen < lower_rank && lower_rank <= next) lower = x;
        if (seen < upper_rank && upper_rank <= next) upper = x;
        seen = next;
      }
      return lower + 0.5 * (upper - lower);
    };
    return m;
  }
  if (name == "max") {
    m.eval = [](const WeightedSample& s) {
      if (s.empty()) throw error("max: sample must be nonempty");
      return numeric_or_throw(s.max(), "max");
    };
    return m;
  }
  if (name == "min") {
    m.eval = [](const WeightedSample& s) {
      if (s.empty()) throw error("min: sample must be nonempty");
      return numeric_or_throw(s.min(), "min");
    };
    return m;
  }
  if (name == "sum") {
    m.eval = [](const WeightedSample& s) {
      if (s.empty()) throw error("sum: sample must be nonempty");
      double acc = 0.0;
      for (const auto& [obs, mult] : s.entries())
        acc += double(mult) * numeric_or_throw(obs, "sum");
      return acc;
    };
    return m;
  }
  throw error("builtin_oracle: unknown estimator '" + name + "'");
}

ListEstimator builtin_list_estimator(const std::string& name) {
  ListEstimator le;
  le.name = name;
  le.symmetric_by_construction = false;

  if (name == "arithmetic") {
    le.eval = [](const std::vector<Observation>& xs) {
      if (xs.empty()) throw error("arithmetic: list must be nonempty");
      double acc = 0.0;
      for (const auto& x : xs) acc += numeric_or_throw(x, "arithmetic");
      return acc / double(xs.size());
    };
    return le;
  }
  if (name == "first-biased") {
    // Counts the first entry twice: transparently order-dependent.
    le.eval = [](const std::vector<Observation>& xs) {
      if (xs.empty()) throw error("first-biased: list must be nonempty");
      double acc = numeric_or_throw(xs.front(), "first-biased");
      for (const auto& x : xs) acc += numeric_or_throw(x, "first-biased");
      return acc / double(xs.size() + 1);
    };
    return le;
  }
  throw error("builtin_list_estimator: unknown estimator '" + name + "'");
}

std::vector<std::string> builtin_oracle_names() {
  return {"arithmetic", "geometric", "harmonic", "median",
          "max",        "min",       "sum"};
}

}  // namespace psilab
