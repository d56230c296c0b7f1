#include "psilab/semigroup.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <string>

#include "psilab/common.hpp"
#include "psilab/rng.hpp"

namespace psilab {

double mu(const EstimatorOracle& m, const WeightedSample& s) {
  if (!m.eval) throw error("mu: oracle " + m.name + " has no eval");
  return m.eval(s);
}

const char* to_string(Level l) {
  switch (l) {
    case Level::InA: return "below";
    case Level::InB: return "above";
    case Level::Boundary: return "boundary";
  }
  return "?";
}

Level level_membership(const EstimatorOracle& m, const WeightedSample& s,
                       double t, double tol) {
  double v = mu(m, s);
  if (v < t - tol) return Level::InA;
  if (v > t + tol) return Level::InB;
  return Level::Boundary;
}

PairSampler make_pool_pair_sampler(const SamplerConfig& cfg) {
  auto rng = std::make_shared<Rng>(cfg.seed);
  auto cfg_copy = cfg;
  return [rng, cfg_copy]() {
    WeightedSample r = sample_weighted(cfg_copy, *rng);
    WeightedSample s = sample_weighted(cfg_copy, *rng);
    return std::make_pair(std::move(r), std::move(s));
  };
}

AxiomReport closure_probe(const EstimatorOracle& m, double t,
                          const PairSampler& sampler, long trials,
                          double tol) {
  AxiomReport rep;
  rep.axiom = "level-set closure at t = " + format_double(t);
  rep.trials = trials;
  long below_pairs = 0;
  long above_pairs = 0;
  for (long trial = 0; trial < trials; ++trial) {
    auto [r, s] = sampler();
    Level lr = level_membership(m, r, t, tol);
    Level ls = level_membership(m, s, t, tol);
    if (lr == Level::Boundary || ls == Level::Boundary || lr != ls) continue;
    WeightedSample u = concat(r, s);
    Level lu = level_membership(m, u, t, tol);
    if (lr == Level::InA) ++below_pairs; else ++above_pairs;
    if (lu == lr) continue;

    double vr = mu(m, r);
    double vs = mu(m, s);
    double vu = mu(m, u);
    Witness w;
    w.relation = "combining two samples on the " + std::string(to_string(lr)) +
                 " side of " + format_double(t) + " left that side";
    w.samples = {r, s, u};
    w.values = {vr, vs, vu};
    w.violation = std::fabs(vu - t);
    w.trial = trial;
    if (rep.witnesses.size() < AxiomReport::kMaxWitnesses)
      rep.witnesses.push_back(std::move(w));
  }
  rep.metrics.push_back({"below_pairs", static_cast<double>(below_pairs)});
  rep.metrics.push_back({"above_pairs", static_cast<double>(above_pairs)});
  if (!rep.witnesses.empty()) {
    rep.verdict = Verdict::Fail;
  } else if (below_pairs + above_pairs == 0) {
    rep.verdict = Verdict::Inconclusive;
    rep.note = "no trial produced two samples strictly on the same side";
  } else {
    rep.verdict = Verdict::Pass;
  }
  return rep;
}

CoreProbeResult core_probe(const EstimatorOracle& m, double t,
                           const WeightedSample& a, const WeightedSample& s,
                           std::int64_t n_max, double tol) {
  if (level_membership(m, a, t, tol) != Level::InA) {
    throw error("core_probe: estimate of " + a.to_string() + " is " +
                format_double(mu(m, a)) + ", not strictly below " +
                format_double(t));
  }
  if (n_max < 1) throw error("core_probe: n_max must be positive");
  CoreProbeResult res;
  res.n_max = n_max;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    WeightedSample probe = concat(replicate(a, n), s);
    if (level_membership(m, probe, t, tol) == Level::InA) {
      res.resolved = true;
      res.n = n;
      return res;
    }
  }
  return res;
}

namespace {

// C(max_size + k, k) - 1 without overflow for the sizes we allow.
std::size_t multiset_count(std::size_t k, int max_size, std::size_t cap) {
  // Binomial coefficient C(max_size + k, k), computed incrementally and
  // clamped once it exceeds the cap so huge alphabets cannot overflow.
  long double acc = 1.0L;
  for (std::size_t i = 1; i <= k; ++i) {
    acc = acc * (max_size + i) / i;
    if (acc > 4.0L * static_cast<long double>(cap)) {
      return cap + 1;
    }
  }
  return static_cast<std::size_t>(acc + 0.5L) - 1;  // drop the empty multiset
}

void enumerate_rec(std::span<const Observation> alphabet, std::size_t first,
                   int remaining,
                   std::vector<std::pair<Observation, std::int64_t>>& stack,
                   std::vector<WeightedSample>& out) {
  // Symbols enter in strictly increasing index order, so every multiset is
  // built along exactly one path and emitted exactly once, on entry.
  if (!stack.empty()) out.push_back(WeightedSample::from_pairs(stack));
  if (remaining == 0) return;
  for (std::size_t i = first; i < alphabet.size(); ++i) {
    for (int mult = 1; mult <= remaining; ++mult) {
      stack.emplace_back(alphabet[i], mult);
      enumerate_rec(alphabet, i + 1, remaining - mult, stack, out);
      stack.pop_back();
    }
  }
}

}  // namespace

std::vector<WeightedSample> enumerate_multisets(
    std::span<const Observation> alphabet, int max_size, std::size_t cap) {
  if (alphabet.empty()) throw error("enumerate_multisets: empty alphabet");
  if (max_size < 1) throw error("enumerate_multisets: max_size must be >= 1");
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    for (std::size_t j = i + 1; j < alphabet.size(); ++j) {
      if (alphabet[i] == alphabet[j]) {
        throw error("enumerate_multisets: duplicate symbol " +
                    alphabet[i].label());
      }
    }
  }
  std::size_t expect = multiset_count(alphabet.size(), max_size, cap);
  if (expect > cap) {
    throw error("enumerate_multisets: would produce more than " +
                std::to_string(cap) + " multisets");
  }

  std::vector<WeightedSample> out;
  out.reserve(expect);
  std::vector<std::pair<Observation, std::int64_t>> stack;
  enumerate_rec(alphabet, 0, max_size, stack, out);
  return out;
}

}  // namespace psilab
