#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "psilab/axioms.hpp"
#include "psilab/catalog.hpp"
#include "psilab/cli.hpp"
#include "psilab/common.hpp"
#include "psilab/estimate.hpp"
#include "psilab/oracle.hpp"
#include "psilab/ratio.hpp"
#include "psilab/semigroup.hpp"
#include "psilab/sign_change.hpp"
#include "psilab/synthesis.hpp"

namespace psilab::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

std::vector<Observation> parse_alphabet(const std::string& text) {
  std::vector<Observation> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    std::size_t b = tok.find_first_not_of(" \t");
    if (b == std::string::npos) throw error("empty alphabet entry");
    std::size_t e = tok.find_last_not_of(" \t");
    out.push_back(Observation::parse(tok.substr(b, e - b + 1)));
  }
  if (out.empty()) throw error("alphabet is empty");
  return out;
}

ordered_json tolerances_json(const Tolerances& tol) {
  ordered_json j;
  j["bracket_growth"] = tol.bracket_growth;
  j["root_abs_tol"] = tol.root_abs_tol;
  j["plateau_width_tol"] = tol.plateau_width_tol;
  j["zero_tol"] = tol.zero_tol;
  j["max_bracket_steps"] = tol.max_bracket_steps;
  j["max_bisect_steps"] = tol.max_bisect_steps;
  return j;
}

ordered_json sign_change_json(const SignChangeResult& r) {
  ordered_json j;
  j["status"] = to_string(r.status);
  switch (r.status) {
    case SignChangeStatus::Located:
    case SignChangeStatus::ExactZero:
      j["theta"] = r.theta;
      j["bracket"] = {r.bracket_lo, r.bracket_hi};
      j["residual_at_theta"] = r.residual_at_theta;
      j["initial_bracket"] = {r.initial_lo, r.initial_hi};
      break;
    case SignChangeStatus::Plateau:
      j["plateau"] = {r.plateau_lo, r.plateau_hi};
      break;
    case SignChangeStatus::NoBracket:
      j["probes"] = r.probe_log;
      break;
  }
  j["evaluations"] = r.evaluations;
  return j;
}

ordered_json estimate_json(const EstimateReport& rep) {
  ordered_json j;
  j["sign_change"] = sign_change_json(rep.sign_change);
  if (rep.ok()) {
    j["theta"] = rep.theta;
    j["z_residual"] = rep.z_residual;
  }
  j["n"] = rep.n;
  j["seed"] = rep.seed;
  j["z_claim_violated"] = rep.z_claim_violated;
  return j;
}

ordered_json witness_json(const Witness& w) {
  ordered_json j;
  j["relation"] = w.relation;
  if (!w.lists.empty()) {
    ordered_json lists = ordered_json::array();
    for (const auto& list : w.lists) {
      ordered_json one = ordered_json::array();
      for (const auto& x : list) one.push_back(x.label());
      lists.push_back(std::move(one));
    }
    j["lists"] = std::move(lists);
  }
  if (!w.samples.empty()) {
    ordered_json samples = ordered_json::array();
    for (const auto& s : w.samples) samples.push_back(s.to_string());
    j["samples"] = std::move(samples);
  }
  j["values"] = w.values;
  j["violation"] = w.violation;
  if (w.trial >= 0) j["trial"] = w.trial;
  return j;
}

ordered_json sampler_json(const SamplerConfig& cfg) {
  ordered_json j;
  j["seed"] = cfg.seed;
  if (!cfg.pool.empty()) {
    ordered_json pool = ordered_json::array();
    for (const auto& x : cfg.pool) pool.push_back(x.label());
    j["pool"] = std::move(pool);
  } else {
    j["range"] = {cfg.range_lo, cfg.range_hi};
  }
  j["max_block"] = cfg.max_block;
  j["trials"] = cfg.trials;
  j["tolerance"] = cfg.tolerance;
  return j;
}

ordered_json axiom_report_json(const AxiomReport& rep) {
  ordered_json j;
  j["axiom"] = rep.axiom;
  j["verdict"] = to_string(rep.verdict);
  j["trials"] = rep.trials;
  j["max_violation"] = rep.max_violation;
  if (!rep.note.empty()) j["note"] = rep.note;
  if (!rep.witnesses.empty()) {
    ordered_json ws = ordered_json::array();
    for (const auto& w : rep.witnesses) ws.push_back(witness_json(w));
    j["witnesses"] = std::move(ws);
  }
  if (!rep.trace.empty()) {
    ordered_json tr = ordered_json::array();
    for (const auto& [k, v] : rep.trace) tr.push_back({k, v});
    j["trace"] = std::move(tr);
  }
  if (!rep.metrics.empty()) {
    ordered_json ms;
    for (const auto& [k, v] : rep.metrics) ms[k] = v;
    j["metrics"] = std::move(ms);
  }
  j["sampler"] = sampler_json(rep.config);
  return j;
}

struct CommandOutcome {
  int exit_code = kExitOk;
  ordered_json results;
};

SamplerConfig make_sampler_config(const RunConfig& cfg,
                                  const WeightedSample* data) {
  SamplerConfig s;
  s.seed = cfg.seed;
  s.trials = cfg.trials;
  s.max_block = cfg.max_block;
  s.tolerance = cfg.check_tolerance;
  if (data) {
    for (const auto& [x, mult] : data->entries()) s.pool.push_back(x);
  } else if (!cfg.alphabet.empty()) {
    s.pool = parse_alphabet(cfg.alphabet);
  }
  if (cfg.pool_range) {
    s.range_lo = cfg.pool_range->first;
    s.range_hi = cfg.pool_range->second;
  } else {
    s.range_lo = 0.1;
    s.range_hi = 10.0;
  }
  return s;
}

ScoreFamily resolve_psi(const RunConfig& cfg) {
  if (cfg.psi_spec.empty()) throw error(cfg.command + " needs --psi");
  ScoreFamily psi = parse_psi_spec(cfg.psi_spec);
  if (cfg.theta) {
    if (!(cfg.theta->lo >= psi.domain.lo && cfg.theta->hi <= psi.domain.hi)) {
      throw error("theta interval " + cfg.theta->to_string() +
                  " must be a sub-interval of the family domain " +
                  psi.domain.to_string());
    }
    psi.domain = *cfg.theta;
  }
  return psi;
}

EstimatorOracle resolve_oracle(const RunConfig& cfg) {
  if (!cfg.mean_name.empty()) return builtin_oracle(cfg.mean_name);
  if (!cfg.psi_spec.empty())
    return oracle_from_score(resolve_psi(cfg), cfg.tolerances);
  throw error(cfg.command + " needs --mean or --psi");
}

CommandOutcome run_estimate(const RunConfig& cfg) {
  ScoreFamily psi = resolve_psi(cfg);
  if (cfg.data_path.empty()) throw error("estimate needs --data");
  WeightedSample data = ingest_sample(cfg.data_path);
  EstimateReport rep = estimate(psi, data, cfg.tolerances);
  CommandOutcome out;
  out.results["family"] = psi.name;
  out.results["claims"] = psi.claims.to_string();
  out.results["domain"] = psi.domain.to_string();
  out.results["estimate"] = estimate_json(rep);
  out.exit_code = rep.ok() ? kExitOk : kExitError;
  return out;
}

AxiomReport t_property_report(const ScoreFamily& psi,
                              const std::vector<WeightedSample>& samples,
                              const Tolerances& tol, const SamplerConfig& scfg) {
  AxiomReport rep;
  rep.axiom = "t-property";
  rep.config = scfg;
  for (const auto& s : samples) {
    ++rep.trials;
    EstimateReport er = estimate(psi, s, tol);
    if (er.sign_change.status == SignChangeStatus::Plateau) {
      double width = er.sign_change.plateau_hi - er.sign_change.plateau_lo;
      rep.max_violation = std::max(rep.max_violation, width);
      Witness w;
      w.relation = "score sum holds a flat zero band, no strict sign change";
      w.samples = {s};
      w.values = {er.sign_change.plateau_lo, er.sign_change.plateau_hi};
      w.violation = width;
      w.trial = rep.trials - 1;
      if (rep.witnesses.size() < AxiomReport::kMaxWitnesses)
        rep.witnesses.push_back(std::move(w));
    } else if (er.sign_change.status == SignChangeStatus::NoBracket) {
      throw error("score sum of " + s.to_string() +
                  " never shows both signs; no estimate exists in the "
                  "search interval");
    }
  }
  rep.verdict = rep.witnesses.empty() ? Verdict::Pass : Verdict::Fail;
  return rep;
}

AxiomReport z_property_report(const ScoreFamily& psi,
                              const std::vector<WeightedSample>& samples,
                              const Tolerances& tol, const SamplerConfig& scfg) {
  AxiomReport rep;
  rep.axiom = "z-property";
  rep.config = scfg;
  for (const auto& s : samples) {
    ++rep.trials;
    EstimateReport er = estimate(psi, s, tol);
    if (!er.ok()) {
      throw error("estimate failed with status " +
                  std::string(to_string(er.sign_change.status)) + " on " +
                  s.to_string());
    }
    double allowed = scfg.tolerance * static_cast<double>(er.n);
    double miss = std::fabs(er.z_residual);
    rep.max_violation = std::max(rep.max_violation, miss);
    if (miss > allowed) {
      Witness w;
      w.relation = "score sum at the estimate misses zero";
      w.samples = {s};
      w.values = {er.theta, er.z_residual};
      w.violation = miss;
      w.trial = rep.trials - 1;
      if (rep.witnesses.size() < AxiomReport::kMaxWitnesses)
        rep.witnesses.push_back(std::move(w));
    }
  }
  rep.verdict = rep.witnesses.empty() ? Verdict::Pass : Verdict::Fail;
  return rep;
}

CommandOutcome run_audit(const RunConfig& cfg) {
  // Either a score family or a builtin estimator can be audited. The
  // t/z-property checks interrogate the score sum itself, so those two
  // stay --psi only.
  const bool by_name = cfg.psi_spec.empty() && !cfg.mean_name.empty();
  if (cfg.psi_spec.empty() && cfg.mean_name.empty())
    throw error("audit needs --psi or --mean");
  ScoreFamily psi;
  if (!by_name) psi = resolve_psi(cfg);
  if (cfg.axioms.empty())
    throw error("audit needs --axioms (symmetry, internality, "
                "strict-internality, idempotency, t-property, z-property)");

  WeightedSample data;
  bool have_data = !cfg.data_path.empty();
  if (have_data) data = ingest_sample(cfg.data_path);
  SamplerConfig scfg = make_sampler_config(cfg, have_data ? &data : nullptr);

  // Fixed-sample audits check the given sample; randomized audits draw
  // cfg.trials samples (from the data's values when data is present).
  std::vector<WeightedSample> fixed;
  if (have_data) {
    fixed.push_back(data);
  } else {
    Rng rng(cfg.seed);
    fixed.reserve(scfg.trials);
    for (long i = 0; i < scfg.trials; ++i)
      fixed.push_back(sample_weighted(scfg, rng));
  }

  // For a list-shaped check on a named estimator, prefer the genuine
  // list form when one exists; multiset-backed estimators are symmetric
  // by construction and check_symmetry reports them as such.
  auto named_list = [&cfg]() -> ListEstimator {
    try {
      return builtin_list_estimator(cfg.mean_name);
    } catch (const error&) {
      return list_oracle_from_multiset(builtin_oracle(cfg.mean_name));
    }
  };
  auto as_oracle = [&]() -> EstimatorOracle {
    return by_name ? builtin_oracle(cfg.mean_name)
                   : oracle_from_score(psi, cfg.tolerances);
  };

  CommandOutcome out;
  if (by_name) {
    out.results["estimator"] = cfg.mean_name;
  } else {
    out.results["family"] = psi.name;
    out.results["claims"] = psi.claims.to_string();
  }
  ordered_json checks = ordered_json::array();
  bool any_fail = false;
  for (const std::string& axiom : cfg.axioms) {
    AxiomReport rep;
    if (axiom == "symmetry") {
      rep = check_symmetry(
          by_name ? named_list() : list_oracle_from_score(psi, cfg.tolerances),
          scfg);
    } else if (axiom == "internality") {
      rep = check_internality(as_oracle(), scfg, false);
    } else if (axiom == "strict-internality") {
      rep = check_internality(as_oracle(), scfg, true);
    } else if (axiom == "idempotency") {
      EstimatorOracle m = as_oracle();
      WeightedSample x = have_data
                             ? WeightedSample::single(data.min())
                             : WeightedSample::single(Observation::real(
                                   0.5 * (scfg.range_lo + scfg.range_hi)));
      Observation y = have_data ? data.max()
                                : Observation::real(scfg.range_hi);
      auto schedule = default_idempotency_schedule();
      rep = check_asymptotic_idempotency(m, x, y, schedule, scfg.tolerance);
      rep.config = scfg;
    } else if (axiom == "t-property") {
      if (by_name) throw error("t-property audits a score sum; give --psi");
      rep = t_property_report(psi, fixed, cfg.tolerances, scfg);
    } else if (axiom == "z-property") {
      if (by_name) throw error("z-property audits a score sum; give --psi");
      rep = z_property_report(psi, fixed, cfg.tolerances, scfg);
    } else {
      throw error("unknown axiom '" + axiom + "'");
    }
    if (rep.verdict == Verdict::Fail) any_fail = true;
    checks.push_back(axiom_report_json(rep));
  }
  out.results["checks"] = std::move(checks);
  out.exit_code = any_fail ? kExitFalsified : kExitOk;
  return out;
}

CommandOutcome run_kolmogorov(const RunConfig& cfg) {
  EstimatorOracle m = resolve_oracle(cfg);
  SamplerConfig scfg = make_sampler_config(cfg, nullptr);
  double lo = scfg.range_lo;
  double hi = scfg.range_hi;
  std::vector<AxiomReport> reports = kolmogorov_suite(m, lo, hi, scfg);
  CommandOutcome out;
  out.results["oracle"] = m.name;
  out.results["interval"] = {lo, hi};
  ordered_json checks = ordered_json::array();
  bool any_fail = false;
  for (const auto& rep : reports) {
    if (rep.verdict == Verdict::Fail) any_fail = true;
    checks.push_back(axiom_report_json(rep));
  }
  out.results["checks"] = std::move(checks);
  out.exit_code = any_fail ? kExitFalsified : kExitOk;
  return out;
}

CommandOutcome run_diagnose_ratio(const RunConfig& cfg) {
  ScoreFamily psi = resolve_psi(cfg);
  if (cfg.x_data_path.empty() || cfg.y_data_path.empty())
    throw error("diagnose ratio needs --x-data and --y-data");
  WeightedSample x = ingest_sample(cfg.x_data_path);
  WeightedSample y = ingest_sample(cfg.y_data_path);
  RatioDiagnostic diag =
      audit_ratio(psi, x, y, cfg.grid_size, cfg.tolerances);
  CommandOutcome out;
  out.results["family"] = psi.name;
  out.results["x_estimate"] = diag.x_estimate;
  out.results["y_estimate"] = diag.y_estimate;
  out.results["grid"] = diag.grid;
  out.results["values"] = diag.values;
  out.results["positive_on_gap_interval"] = diag.positive_on_gap_interval;
  out.results["monotone_on_gap_interval"] = diag.monotone_on_gap_interval;
  out.results["continuity_consistent"] = diag.continuity_consistent;
  out.results["coarse_max_jump"] = diag.coarse_max_jump;
  out.results["refined_max_jump"] = diag.refined_max_jump;
  return out;
}

CommandOutcome run_diagnose_zlimits(const RunConfig& cfg) {
  ScoreFamily psi = resolve_psi(cfg);
  if (cfg.x_data_path.empty()) throw error("diagnose zlimits needs --x-data");
  if (!cfg.y_value) throw error("diagnose zlimits needs --y");
  WeightedSample x = ingest_sample(cfg.x_data_path);
  ZLimitReport rep = z_via_ratio_limits(
      psi, x, Observation::real(*cfg.y_value), cfg.tolerances, cfg.limit_tol);
  CommandOutcome out;
  out.results["family"] = psi.name;
  out.results["claims"] = psi.claims.to_string();
  out.results["theta"] = rep.theta;
  out.results["y_estimate"] = rep.y_estimate;
  out.results["h0"] = rep.h0;
  out.results["left_series"] = rep.left_series;
  out.results["right_series"] = rep.right_series;
  out.results["left_limit"] = rep.left_limit;
  out.results["right_limit"] = rep.right_limit;
  out.results["direct_residual"] = rep.direct_residual;
  out.results["limit_tol"] = cfg.limit_tol;
  out.results["z_consistent"] = rep.z_consistent;
  // A family that advertises a vanishing score sum and fails the limit
  // probe has been falsified; otherwise the flag is informational.
  out.exit_code = (psi.claims.z && !rep.z_consistent) ? kExitFalsified
                                                      : kExitOk;
  return out;
}

CommandOutcome run_diagnose_semigroup(const RunConfig& cfg) {
  EstimatorOracle m = resolve_oracle(cfg);
  if (!cfg.t_value) throw error("diagnose semigroup needs --t");
  CommandOutcome out;
  out.results["oracle"] = m.name;
  out.results["t"] = *cfg.t_value;
  if (cfg.probe == "closure") {
    SamplerConfig scfg = make_sampler_config(cfg, nullptr);
    PairSampler sampler = make_pool_pair_sampler(scfg);
    AxiomReport rep =
        closure_probe(m, *cfg.t_value, sampler, scfg.trials, scfg.tolerance);
    rep.config = scfg;
    out.results["report"] = axiom_report_json(rep);
    out.exit_code =
        rep.verdict == Verdict::Fail ? kExitFalsified : kExitOk;
  } else if (cfg.probe == "core") {
    if (cfg.core_a_path.empty() || cfg.core_s_path.empty())
      throw error("diagnose semigroup --probe core needs --a-data and --s-data");
    WeightedSample a = ingest_sample(cfg.core_a_path);
    WeightedSample s = ingest_sample(cfg.core_s_path);
    CoreProbeResult res =
        core_probe(m, *cfg.t_value, a, s, cfg.n_max, cfg.check_tolerance);
    out.results["a"] = a.to_string();
    out.results["s"] = s.to_string();
    out.results["resolved"] = res.resolved;
    out.results["n"] = res.n;
    out.results["n_max"] = res.n_max;
    if (!res.resolved)
      out.results["note"] = "no replicate count up to n_max pulled the "
                            "combined sample below the level";
  } else {
    throw error("unknown semigroup probe '" + cfg.probe +
                "' (closure or core)");
  }
  return out;
}

CommandOutcome run_synthesize(const RunConfig& cfg) {
  EstimatorOracle m = resolve_oracle(cfg);
  if (cfg.alphabet.empty()) throw error("synthesize needs --alphabet");
  std::vector<Observation> alphabet = parse_alphabet(cfg.alphabet);

  double lo, hi;
  if (cfg.pool_range) {
    lo = cfg.pool_range->first;
    hi = cfg.pool_range->second;
  } else {
    bool all_real = true;
    for (const auto& x : alphabet) all_real = all_real && x.is_real();
    if (!all_real)
      throw error("synthesize over a symbolic alphabet needs --range");
    lo = alphabet.front().numeric();
    hi = lo;
    for (const auto& x : alphabet) {
      lo = std::min(lo, x.numeric());
      hi = std::max(hi, x.numeric());
    }
  }
  if (!(lo < hi)) throw error("synthesize grid interval is degenerate");

  int grid_n = cfg.grid_size;
  std::vector<double> grid;
  grid.reserve(grid_n);
  for (int j = 0; j < grid_n; ++j)
    grid.push_back(lo + (hi - lo) * (j + 1) / (grid_n + 1.0));

  SynthesisResult res = synthesize_psi(m, alphabet, grid, cfg.max_size,
                                       cfg.check_tolerance);
  CommandOutcome out;
  out.results["oracle"] = m.name;
  out.results["alphabet"] = cfg.alphabet;
  out.results["max_size"] = cfg.max_size;
  out.results["multiset_count"] = res.multiset_count;
  out.results["grid"] = grid;
  out.results["feasible"] = res.feasible;
  if (res.feasible) {
    out.results["margins"] = res.table.margins;
    out.results["boundary_drops"] = res.boundary_drops;
    VerifyReport verify = verify_synthesis(res.table, m, alphabet,
                                           cfg.max_size);
    ordered_json vj;
    vj["checked"] = verify.checked;
    vj["boundary_skipped"] = verify.boundary_skipped;
    vj["violations"] = verify.violations.size();
    out.results["verify"] = std::move(vj);
    if (!cfg.table_out.empty()) {
      write_psi_table(res.table, cfg.table_out);
      out.results["table_path"] = cfg.table_out;
    }
    out.exit_code = verify.ok() ? kExitOk : kExitError;
    if (!verify.ok())
      out.results["note"] =
          "separation reported feasible but the sign sweep found "
          "violations; treat the table as unusable";
  } else if (res.certificate) {
    const InfeasibilityCertificate& cert = *res.certificate;
    ordered_json cj;
    cj["t"] = cert.t;
    auto side = [](const auto& entries) {
      ordered_json arr = ordered_json::array();
      for (const auto& [s, k] : entries) {
        ordered_json e;
        e["sample"] = s.to_string();
        e["count"] = k;
        arr.push_back(std::move(e));
      }
      return arr;
    };
    cj["below"] = side(cert.below);
    cj["above"] = side(cert.above);
    cj["witness"] = cert.witness_text;
    cj["revalidates"] = cert.revalidate(alphabet);
    out.results["certificate"] = std::move(cj);
    out.exit_code = kExitFalsified;
  } else {
    out.results["note"] = res.note;
    out.exit_code = kExitError;
  }
  return out;
}

CommandOutcome run_catalog(const RunConfig& cfg) {
  if (!cfg.subcommand.empty() && cfg.subcommand != "list")
    throw error("unknown catalog subcommand '" + cfg.subcommand + "'");
  CommandOutcome out;
  ordered_json fams = ordered_json::array();
  auto add = [&fams](const ScoreFamily& f, const std::string& spec) {
    ordered_json j;
    j["spec"] = spec;
    j["name"] = f.name;
    j["domain"] = f.domain.to_string();
    j["claims"] = f.claims.to_string();
    fams.push_back(std::move(j));
  };
  add(qa_score(gen_identity()), "qa:id");
  add(qa_score(gen_log()), "qa:ln");
  add(qa_score(gen_reciprocal()), "qa:recip");
  add(qa_score(gen_power(2.0)), "qa:pow:<p>");
  add(huber_score(1.0), "huber:<kappa>");
  add(arctan_score(), "arctan");
  add(median_score(), "median");
  add(step_score(), "step");
  out.results["score_families"] = std::move(fams);
  out.results["builtin_oracles"] = builtin_oracle_names();
  out.results["list_estimators"] = {"arithmetic", "first-biased"};
  out.results["table_spec"] = "table:<path>";
  return out;
}

ordered_json inputs_json(const RunConfig& cfg) {
  ordered_json j;
  if (!cfg.psi_spec.empty()) j["psi"] = cfg.psi_spec;
  if (!cfg.mean_name.empty()) j["mean"] = cfg.mean_name;
  if (!cfg.data_path.empty()) j["data"] = cfg.data_path;
  if (!cfg.x_data_path.empty()) j["x_data"] = cfg.x_data_path;
  if (!cfg.y_data_path.empty()) j["y_data"] = cfg.y_data_path;
  if (cfg.y_value) j["y"] = *cfg.y_value;
  if (!cfg.axioms.empty()) j["axioms"] = cfg.axioms;
  if (cfg.theta) j["theta"] = cfg.theta->to_string();
  if (!cfg.alphabet.empty()) j["alphabet"] = cfg.alphabet;
  if (cfg.t_value) j["t"] = *cfg.t_value;
  if (!cfg.core_a_path.empty()) j["a_data"] = cfg.core_a_path;
  if (!cfg.core_s_path.empty()) j["s_data"] = cfg.core_s_path;
  if (cfg.pool_range) j["range"] = {cfg.pool_range->first,
                                    cfg.pool_range->second};
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["max_block"] = cfg.max_block;
  j["max_size"] = cfg.max_size;
  j["grid_size"] = cfg.grid_size;
  j["n_max"] = cfg.n_max;
  j["probe"] = cfg.probe;
  j["check_tolerance"] = cfg.check_tolerance;
  j["limit_tol"] = cfg.limit_tol;
  return j;
}

void flatten_csv(const ordered_json& j, const std::string& prefix,
                 std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      flatten_csv(v, prefix.empty() ? k : prefix + "." + k, os);
    }
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& v : j) {
      flatten_csv(v, prefix + "[" + std::to_string(i) + "]", os);
      ++i;
    }
  } else {
    os << prefix << "," << j.dump() << "\n";
  }
}

void write_report(const ordered_json& report, const RunConfig& cfg,
                  std::ostream& fallback) {
  std::ofstream file;
  std::ostream* os = &fallback;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) throw error("cannot open " + cfg.out_path + " for writing");
    os = &file;
  }
  if (cfg.format == "csv") {
    flatten_csv(report, "", *os);
  } else if (cfg.format == "json") {
    *os << report.dump(2) << "\n";
  } else {
    throw error("unknown report format '" + cfg.format + "'");
  }
  os->flush();
  if (os->fail()) throw error("writing the report failed");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& diagnostics) {
  auto t0 = std::chrono::steady_clock::now();
  try {
    cfg.tolerances.validate();
    CommandOutcome outcome;
    if (cfg.command == "estimate") {
      outcome = run_estimate(cfg);
    } else if (cfg.command == "audit") {
      outcome = run_audit(cfg);
    } else if (cfg.command == "kolmogorov") {
      outcome = run_kolmogorov(cfg);
    } else if (cfg.command == "diagnose") {
      if (cfg.subcommand == "ratio") {
        outcome = run_diagnose_ratio(cfg);
      } else if (cfg.subcommand == "zlimits") {
        outcome = run_diagnose_zlimits(cfg);
      } else if (cfg.subcommand == "semigroup") {
        outcome = run_diagnose_semigroup(cfg);
      } else {
        throw error("unknown diagnose subcommand '" + cfg.subcommand +
                    "' (ratio, zlimits, semigroup)");
      }
    } else if (cfg.command == "catalog") {
      outcome = run_catalog(cfg);
    } else if (cfg.command == "synthesize") {
      outcome = run_synthesize(cfg);
    } else {
      throw error("unknown command '" + cfg.command + "'");
    }

    ordered_json report;
    report["command"] = cfg.command;
    if (!cfg.subcommand.empty()) report["subcommand"] = cfg.subcommand;
    report["version"] = kVersion;
    report["exit_code"] = outcome.exit_code;
    report["inputs"] = inputs_json(cfg);
    report["tolerances"] = tolerances_json(cfg.tolerances);
    report["results"] = std::move(outcome.results);
    if (cfg.emit_timing) {
      auto dt = std::chrono::duration<double>(
          std::chrono::steady_clock::now() - t0);
      report["timing"] = {{"seconds", dt.count()}};
    }
    write_report(report, cfg, std::cout);
    return outcome.exit_code;
  } catch (const std::exception& e) {
    diagnostics << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace psilab::cli
