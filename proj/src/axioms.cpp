#include "psilab/axioms.hpp"

#include <algorithm>
#include <cmath>

#include "psilab/common.hpp"

namespace psilab {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "Pass";
    case Verdict::Fail:
      return "Fail";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Unknown";
}

Observation sample_observation(const SamplerConfig& cfg, Rng& rng) {
  if (!cfg.pool.empty()) return cfg.pool[rng.index(cfg.pool.size())];
  return Observation::real(rng.uniform(cfg.range_lo, cfg.range_hi));
}

std::vector<Observation> sample_list(const SamplerConfig& cfg, Rng& rng,
                                     int min_n) {
  if (min_n < 1) min_n = 1;
  if (cfg.max_block < min_n)
    throw error("sample_list: max_block below the minimum block size");
  std::size_t n = min_n + rng.index(cfg.max_block - min_n + 1);
  std::vector<Observation> xs;
  xs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) xs.push_back(sample_observation(cfg, rng));
  return xs;
}

WeightedSample sample_weighted(const SamplerConfig& cfg, Rng& rng) {
  return WeightedSample::from_list(sample_list(cfg, rng, 1));
}

namespace {

void push_witness(AxiomReport& rep, Witness w) {
  if (rep.witnesses.size() < AxiomReport::kMaxWitnesses)
    rep.witnesses.push_back(std::move(w));
}

void settle_verdict(AxiomReport& rep, const SamplerConfig& cfg,
                    bool any_violation) {
  if (any_violation) {
    rep.verdict = Verdict::Fail;
  } else if (rep.trials >= cfg.min_trials_for_pass) {
    rep.verdict = Verdict::Pass;
  } else {
    rep.verdict = Verdict::Inconclusive;
    rep.note = "too few trials for a Pass verdict";
  }
}

// Shared verdict rule for limit-style series: Pass when the tail is
// nonincreasing and the final value is within tolerance; Fail when the
// whole tail stays beyond tolerance; Inconclusive otherwise.
Verdict series_verdict(const std::vector<double>& gaps, double tolerance) {
  if (gaps.empty()) return Verdict::Inconclusive;
  std::size_t half = gaps.size() / 2;
  bool nonincreasing = true;
  for (std::size_t i = std::max<std::size_t>(half, 1); i < gaps.size(); ++i) {
    if (gaps[i] > gaps[i - 1] + 1e-15) nonincreasing = false;
  }
  double tail_min = gaps[half];
  for (std::size_t i = half; i < gaps.size(); ++i)
    tail_min = std::min(tail_min, gaps[i]);
  if (nonincreasing && gaps.back() <= tolerance) return Verdict::Pass;
  if (tail_min > tolerance) return Verdict::Fail;
  return Verdict::Inconclusive;
}

}  // namespace

AxiomReport check_symmetry(const ListEstimator& m, const SamplerConfig& cfg) {
  AxiomReport rep;
  rep.axiom = "symmetry";
  rep.config = cfg;
  if (m.symmetric_by_construction) {
    rep.verdict = Verdict::Pass;
    rep.note = "estimator is multiset-backed; symmetry holds by construction";
    return rep;
  }

  Rng rng(cfg.seed);
  bool any = false;
  for (long trial = 0; trial < cfg.trials; ++trial) {
    std::vector<Observation> xs = sample_list(cfg, rng, 2);
    std::vector<Observation> ys = xs;
    for (std::size_t i = ys.size() - 1; i > 0; --i) {
      std::size_t j = rng.index(i + 1);
      std::swap(ys[i], ys[j]);
    }
    double vx = m.eval(xs);
    double vy = m.eval(ys);
    double viol = std::fabs(vx - vy);
    rep.max_violation = std::max(rep.max_violation, viol);
    ++rep.trials;
    if (viol > cfg.tolerance) {
      any = true;
      Witness w;
      w.relation = "M(list) = M(permuted list)";
      w.lists = {xs, ys};
      w.values = {vx, vy};
      w.violation = viol;
      w.trial = trial;
      push_witness(rep, std::move(w));
    }
  }
  settle_verdict(rep, cfg, any);
  return rep;
}

AxiomReport check_internality(const EstimatorOracle& m,
                              const SamplerConfig& cfg, bool strict) {
  AxiomReport rep;
  rep.axiom = strict ? "strict-internality" : "internality";
  rep.config = cfg;

  Rng rng(cfg.seed);
  bool any = false;
  for (long trial = 0; trial < cfg.trials; ++trial) {
    WeightedSample r = sample_weighted(cfg, rng);
    WeightedSample s = sample_weighted(cfg, rng);
    WeightedSample u = concat(r, s);
    double vr = m.eval(r);
    double vs = m.eval(s);
    double vu = m.eval(u);
    double lo = std::min(vr, vs);
    double hi = std::max(vr, vs);

    double viol = std::max(0.0, std::max(lo - vu, vu - hi));
    bool bad = viol > cfg.tolerance;
    if (strict && !bad && std::fabs(vr - vs) > cfg.tolerance) {
      double margin = std::min(vu - lo, hi - vu);
      if (margin <= cfg.tolerance) {
        bad = true;
        viol = std::max(viol, cfg.tolerance - margin);
      }
    }
    rep.max_violation = std::max(rep.max_violation, viol);
    ++rep.trials;
    if (bad) {
      any = true;
      Witness w;
      w.relation = strict ? "min < M(r + s) < max, strictly between parts"
                          : "min <= M(r + s) <= max";
      w.samples = {r, s, u};
      w.values = {vr, vs, vu};
      w.violation = viol;
      w.trial = trial;
      push_witness(rep, std::move(w));
    }
  }
  settle_verdict(rep, cfg, any);
  return rep;
}

AxiomReport check_asymptotic_idempotency(
    const EstimatorOracle& m, const WeightedSample& x, const Observation& y,
    std::span<const std::int64_t> schedule, double tolerance) {
  if (schedule.empty())
    throw error("check_asymptotic_idempotency: schedule must be nonempty");
  AxiomReport rep;
  rep.axiom = "asymptotic-idempotency";
  rep.config.tolerance = tolerance;
  rep.config.trials = long(schedule.size());

  double base = m.eval(x);
  std::vector<double> gaps;
  gaps.reserve(schedule.size());
  WeightedSample last_sample;
  double last_value = 0.0;
  for (std::int64_t n : schedule) {
    if (n < 1) throw error("check_asymptotic_idempotency: schedule entries must be >= 1");
    last_sample = concat(replicate(x, n), WeightedSample::single(y));
    last_value = m.eval(last_sample);
    double gap = std::fabs(last_value - base);
    gaps.push_back(gap);
    rep.trace.emplace_back(double(n), gap);
    ++rep.trials;
  }
  rep.max_violation = gaps.back();
  rep.verdict = series_verdict(gaps, tolerance);
  rep.metrics.emplace_back("final_gap", gaps.back());
  rep.metrics.emplace_back("base_value", base);
  if (rep.verdict == Verdict::Fail) {
    Witness w;
    w.relation = "M(replicate(x, n) + {y}) -> M(x)";
    w.samples = {x, last_sample};
    w.values = {base, last_value};
    w.violation = gaps.back();
    w.trial = long(schedule.size()) - 1;
    push_witness(rep, std::move(w));
  }
  return rep;
}

std::vector<std::int64_t> default_idempotency_schedule() {
  std::vector<std::int64_t> schedule;
  for (int k = 0; k <= 15; ++k) schedule.push_back(std::int64_t(1) << k);
  return schedule;
}

std::vector<AxiomReport> kolmogorov_suite(const EstimatorOracle& m, double lo,
                                          double hi, const SamplerConfig& cfg) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw error("kolmogorov_suite: need a bounded interval with lo < hi");
  double w = hi - lo;
  std::vector<AxiomReport> out;

  // Coordinate-wise strict monotonicity: push one entry up by a solid
  // increment, demand the value strictly rises.
  {
    AxiomReport rep;
    rep.axiom = "monotonicity";
    rep.config = cfg;
    Rng rng(cfg.seed);
    bool any = false;
    for (long trial = 0; trial < cfg.trials; ++trial) {
      std::size_t n = 1 + rng.index(std::size_t(cfg.max_block));
      std::vector<Observation> xs;
      xs.reserve(n);
      for (std::size_t i = 0; i < n; ++i)
        xs.push_back(Observation::real(rng.uniform(lo, lo + 0.8 * w)));
      std::size_t i = rng.index(n);
      double delta = (0.1 + 0.1 * rng.unit()) * w;
      std::vector<Observation> ys = xs;
      ys[i] = Observation::real(ys[i].numeric() + delta);

      double vx = m.eval(WeightedSample::from_list(xs));
      double vy = m.eval(WeightedSample::from_list(ys));
      double margin = vy - vx;
      double viol = std::max(0.0, cfg.tolerance - margin);
      rep.max_violation = std::max(rep.max_violation, viol);
      ++rep.trials;
      if (margin <= cfg.tolerance) {
        any = true;
        Witness w2;
        w2.relation = "M increases when one entry increases";
        w2.lists = {xs, ys};
        w2.values = {vx, vy};
        w2.violation = viol;
        w2.trial = trial;
        push_witness(rep, std::move(w2));
      }
    }
    settle_verdict(rep, cfg, any);
    out.push_back(std::move(rep));
  }

  // Continuity as vanishing perturbation response.
  {
    AxiomReport rep;
    rep.axiom = "continuity";
    rep.config = cfg;
    Rng rng(cfg.seed + 1);
    const int kHalvings = 40;
    long trials = std::max(1L, cfg.trials / 20);
    Verdict worst = Verdict::Pass;
    for (long trial = 0; trial < trials; ++trial) {
      std::size_t n = 1 + rng.index(std::size_t(cfg.max_block));
      std::vector<Observation> xs;
      xs.reserve(n);
      for (std::size_t i = 0; i < n; ++i)
        xs.push_back(Observation::real(rng.uniform(lo, lo + 0.8 * w)));
      std::size_t i = rng.index(n);
      double base = m.eval(WeightedSample::from_list(xs));

      std::vector<double> responses;
      double delta = 0.1 * w;
      for (int k = 0; k <= kHalvings; ++k) {
        std::vector<Observation> ys = xs;
        ys[i] = Observation::real(ys[i].numeric() + delta);
        double v = m.eval(WeightedSample::from_list(ys));
        responses.push_back(std::fabs(v - base));
        delta *= 0.5;
      }
      Verdict v = series_verdict(responses, cfg.tolerance);
      if (trial == 0) {
        double d = 0.1 * w;
        for (double r : responses) {
          rep.trace.emplace_back(d, r);
          d *= 0.5;
        }
      }
      rep.max_violation = std::max(rep.max_violation, responses.back());
      ++rep.trials;
      if (v == Verdict::Fail) {
        worst = Verdict::Fail;
        Witness w2;
        w2.relation = "perturbation response vanishes with the perturbation";
        w2.lists = {xs};
        w2.values = {base, responses.back()};
        w2.violation = responses.back();
        w2.trial = trial;
        push_witness(rep, std::move(w2));
      } else if (v == Verdict::Inconclusive && worst == Verdict::Pass) {
        worst = Verdict::Inconclusive;
      }
    }
    rep.verdict = worst;
    if (worst == Verdict::Inconclusive)
      rep.note = "response series neither settled below tolerance nor stayed above it";
    out.push_back(std::move(rep));
  }

  // Reflexivity.
  {
    AxiomReport rep;
    rep.axiom = "reflexivity";
    rep.config = cfg;
    Rng rng(cfg.seed + 2);
    bool any = false;
    for (long trial = 0; trial < cfg.trials; ++trial) {
      double x = rng.uniform(lo, hi);
      std::int64_t n = 1 + std::int64_t(rng.index(std::size_t(cfg.max_block)));
      WeightedSample s = WeightedSample::single(Observation::real(x), n);
      double v = m.eval(s);
      double viol = std::fabs(v - x);
      rep.max_violation = std::max(rep.max_violation, viol);
      ++rep.trials;
      if (viol > cfg.tolerance) {
        any = true;
        Witness w2;
        w2.relation = "M(x, ..., x) = x";
        w2.samples = {s};
        w2.values = {v, x};
        w2.violation = viol;
        w2.trial = trial;
        push_witness(rep, std::move(w2));
      }
    }
    settle_verdict(rep, cfg, any);
    out.push_back(std::move(rep));
  }

  // Replacement of a block by its own mean.
  {
    AxiomReport rep;
    rep.axiom = "replacement";
    rep.config = cfg;
    Rng rng(cfg.seed + 3);
    bool any = false;
    for (long trial = 0; trial < cfg.trials; ++trial) {
      std::size_t k = 1 + rng.index(std::size_t(cfg.max_block));
      std::size_t extra = 1 + rng.index(std::size_t(cfg.max_block));
      std::vector<Observation> xs, ys;
      for (std::size_t i = 0; i < k; ++i)
        xs.push_back(Observation::real(rng.uniform(lo, hi)));
      for (std::size_t i = 0; i < extra; ++i)
        ys.push_back(Observation::real(rng.uniform(lo, hi)));
      WeightedSample xblock = WeightedSample::from_list(xs);
      WeightedSample yblock = WeightedSample::from_list(ys);
      double xbar = m.eval(xblock);
      WeightedSample replaced = WeightedSample::single(
          Observation::real(xbar), std::int64_t(k));
      double lhs = m.eval(concat(xblock, yblock));
      double rhs = m.eval(concat(replaced, yblock));
      double viol = std::fabs(lhs - rhs);
      rep.max_violation = std::max(rep.max_violation, viol);
      ++rep.trials;
      if (viol > cfg.tolerance) {
        any = true;
        Witness w2;
        w2.relation = "M(x-block + y-block) = M(k copies of mean(x) + y-block)";
        w2.samples = {xblock, yblock};
        w2.values = {lhs, rhs};
        w2.violation = viol;
        w2.trial = trial;
        push_witness(rep, std::move(w2));
      }
    }
    settle_verdict(rep, cfg, any);
    out.push_back(std::move(rep));
  }

  return out;
}

AxiomReport check_generator_equivalence(const Generator& f, const Generator& g,
                                        const SamplerConfig& cfg) {
  AxiomReport rep;
  rep.axiom = "generator-equivalence";
  rep.config = cfg;

  Rng rng(cfg.seed);
  bool any = false;
  for (long trial = 0; trial < cfg.trials; ++trial) {
    WeightedSample s = sample_weighted(cfg, rng);
    double vf = qa_mean(f, s);
    double vg = qa_mean(g, s);
    double viol = std::fabs(vf - vg);
    rep.max_violation = std::max(rep.max_violation, viol);
    ++rep.trials;
    if (viol > cfg.tolerance) {
      any = true;
      Witness w;
      w.relation = "quasi-arithmetic means of " + f.name + " and " + g.name +
                   " agree";
      w.samples = {s};
      w.values = {vf, vg};
      w.violation = viol;
      w.trial = trial;
      push_witness(rep, std::move(w));
    }
  }

  // Corroborating affine fit f ~ a*g + b on a grid through the sampling
  // window.
  {
    const int kGrid = 33;
    double glo = cfg.range_lo, ghi = cfg.range_hi;
    if (!cfg.pool.empty()) {
      glo = cfg.pool.front().numeric();
      ghi = glo;
      for (const auto& obs : cfg.pool) {
        glo = std::min(glo, obs.numeric());
        ghi = std::max(ghi, obs.numeric());
      }
      if (glo == ghi) {
        glo -= 0.5;
        ghi += 0.5;
      }
    }
    double su = 0, sw = 0, suu = 0, suw = 0;
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k < kGrid; ++k) {
      double x = glo + (ghi - glo) * (k + 1) / (kGrid + 1.0);
      double u = g.f(x);
      double v = f.f(x);
      pts.emplace_back(u, v);
      su += u;
      sw += v;
      suu += u * u;
      suw += u * v;
    }
    double n = kGrid;
    double var = suu - su * su / n;
    if (std::fabs(var) < 1e-14 * std::max(1.0, suu)) {
      rep.verdict = Verdict::Inconclusive;
      rep.note = "affine fit degenerate: " + g.name + " nearly constant on the grid";
      return rep;
    }
    double a = (suw - su * sw / n) / var;
    double b = (sw - a * su) / n;
    double resid = 0.0;
    for (auto& [u, v] : pts) resid = std::max(resid, std::fabs(v - (a * u + b)));
    rep.metrics.emplace_back("fit_a", a);
    rep.metrics.emplace_back("fit_b", b);
    rep.metrics.emplace_back("fit_residual", resid);
  }

  settle_verdict(rep, cfg, any);
  return rep;
}

}  // namespace psilab
