#include <iostream>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "psilab/cli.hpp"
#include "psilab/common.hpp"

namespace {

using psilab::cli::RunConfig;

struct RawFlags {
  std::string theta;
  std::string range;
  std::string tol;
  std::string format = "json";
  bool no_timing = false;
};

void add_common(CLI::App* cmd, RunConfig& cfg, RawFlags& raw) {
  cmd->add_option("--tol", raw.tol,
                  "Tolerance overrides, key=value pairs separated by commas");
  cmd->add_option("--seed", cfg.seed, "Sampler seed");
  cmd->add_option("--out", cfg.out_path, "Report path (default stdout)");
  cmd->add_option("--format", raw.format, "Report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--no-timing", raw.no_timing,
                "Omit the timing block, making reports byte-reproducible");
}

void add_sampler(CLI::App* cmd, RunConfig& cfg, RawFlags& raw) {
  cmd->add_option("--trials", cfg.trials, "Randomized trial count");
  cmd->add_option("--max-block", cfg.max_block, "Largest sampled block");
  cmd->add_option("--range", raw.range,
                  "Sampling range lo:hi (observations drawn uniformly)");
  cmd->add_option("--check-tol", cfg.check_tolerance,
                  "Violation tolerance for verdicts");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sign-change estimators: estimates, axiom audits, "
               "diagnostics, and score synthesis"};
  app.require_subcommand(1);

  RunConfig cfg;
  RawFlags raw;

  CLI::App* estimate = app.add_subcommand(
      "estimate", "Locate the score sum's sign change for one sample");
  estimate->add_option("--psi", cfg.psi_spec, "Score family spec")
      ->required();
  estimate->add_option("--data", cfg.data_path, "Sample file (csv or json)")
      ->required();
  estimate->add_option("--theta", raw.theta,
                       "Restrict the search to lo:hi (-inf/inf accepted)");
  add_common(estimate, cfg, raw);

  CLI::App* audit = app.add_subcommand(
      "audit", "Check estimator axioms, reporting witnesses on failure");
  audit->add_option("--psi", cfg.psi_spec, "Score family spec");
  audit->add_option("--mean", cfg.mean_name,
                    "Audit a builtin estimator by name instead of a score");
  audit->add_option("--data", cfg.data_path,
                    "Audit this sample (and draw pools from its values)");
  audit
      ->add_option("--axioms", cfg.axioms,
                   "Comma-separated: symmetry, internality, "
                   "strict-internality, idempotency, t-property, z-property")
      ->required()
      ->delimiter(',');
  audit->add_option("--theta", raw.theta, "Restrict the search to lo:hi");
  add_sampler(audit, cfg, raw);
  add_common(audit, cfg, raw);

  CLI::App* kolmogorov = app.add_subcommand(
      "kolmogorov", "Mean-sequence axioms on a compact interval");
  kolmogorov->add_option("--psi", cfg.psi_spec, "Score family spec");
  kolmogorov->add_option("--mean", cfg.mean_name, "Builtin oracle name");
  add_sampler(kolmogorov, cfg, raw);
  add_common(kolmogorov, cfg, raw);

  CLI::App* diagnose =
      app.add_subcommand("diagnose", "Score-ratio and semigroup probes");
  diagnose->require_subcommand(1);

  CLI::App* ratio = diagnose->add_subcommand(
      "ratio", "Block score ratio on the gap interval between two estimates");
  ratio->add_option("--psi", cfg.psi_spec, "Score family spec")->required();
  ratio->add_option("--x-data", cfg.x_data_path, "Numerator block")
      ->required();
  ratio->add_option("--y-data", cfg.y_data_path, "Denominator block")
      ->required();
  ratio->add_option("--grid", cfg.grid_size, "Grid points (default 100)");
  add_common(ratio, cfg, raw);

  CLI::App* zlimits = diagnose->add_subcommand(
      "zlimits", "One-sided ratio limits at the block estimate");
  zlimits->add_option("--psi", cfg.psi_spec, "Score family spec")->required();
  zlimits->add_option("--x-data", cfg.x_data_path, "Block sample")->required();
  zlimits->add_option("--y", cfg.y_value, "Far observation")->required();
  zlimits->add_option("--limit-tol", cfg.limit_tol,
                      "Limit magnitude below this counts as vanishing");
  add_common(zlimits, cfg, raw);

  CLI::App* semigroup = diagnose->add_subcommand(
      "semigroup", "Level-set closure and absorption probes");
  semigroup->add_option("--psi", cfg.psi_spec, "Score family spec");
  semigroup->add_option("--mean", cfg.mean_name, "Builtin oracle name");
  semigroup->add_option("--t", cfg.t_value, "Level parameter")->required();
  semigroup->add_option("--probe", cfg.probe, "closure (default) or core");
  semigroup->add_option("--alphabet", cfg.alphabet,
                        "Comma-separated observation pool");
  semigroup->add_option("--a-data", cfg.core_a_path,
                        "core probe: replicated block");
  semigroup->add_option("--s-data", cfg.core_s_path,
                        "core probe: fixed block");
  semigroup->add_option("--n-max", cfg.n_max,
                        "core probe: largest replicate count");
  add_sampler(semigroup, cfg, raw);
  add_common(semigroup, cfg, raw);

  CLI::App* synthesize = app.add_subcommand(
      "synthesize",
      "Fit a tabulated score family to an estimator over a finite alphabet");
  synthesize->add_option("--psi", cfg.psi_spec, "Score family spec");
  synthesize->add_option("--mean", cfg.mean_name, "Builtin oracle name");
  synthesize->add_option("--alphabet", cfg.alphabet,
                         "Comma-separated observation alphabet")
      ->required();
  synthesize->add_option("--max-size", cfg.max_size,
                         "Largest multiset size enumerated");
  synthesize->add_option("--grid", cfg.grid_size,
                         "Number of interior grid points");
  synthesize->add_option("--range", raw.range,
                         "Grid interval lo:hi (default alphabet min:max)");
  synthesize->add_option("--table-out", cfg.table_out,
                         "Write the synthesized table here");
  synthesize->add_option("--boundary-tol", cfg.check_tolerance,
                         "Drop multisets whose estimate is this close to t");
  add_common(synthesize, cfg, raw);

  CLI::App* catalog =
      app.add_subcommand("catalog", "Describe available families");
  CLI::App* catalog_list =
      catalog->add_subcommand("list", "List families, oracles, and specs");
  add_common(catalog_list, cfg, raw);
  catalog->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? psilab::cli::kExitOk : psilab::cli::kExitError;
  }

  try {
    if (estimate->parsed()) cfg.command = "estimate";
    if (audit->parsed()) cfg.command = "audit";
    if (kolmogorov->parsed()) cfg.command = "kolmogorov";
    if (diagnose->parsed()) {
      cfg.command = "diagnose";
      if (ratio->parsed()) cfg.subcommand = "ratio";
      if (zlimits->parsed()) cfg.subcommand = "zlimits";
      if (semigroup->parsed()) cfg.subcommand = "semigroup";
    }
    if (synthesize->parsed()) cfg.command = "synthesize";
    if (catalog->parsed()) {
      cfg.command = "catalog";
      cfg.subcommand = "list";
    }

    if (!raw.theta.empty()) cfg.theta = psilab::cli::parse_theta(raw.theta);
    if (!raw.range.empty()) {
      psilab::ParameterInterval r = psilab::cli::parse_theta(raw.range);
      if (!r.bounded())
        throw psilab::error("--range needs finite endpoints, got " +
                            r.to_string());
      cfg.pool_range = std::make_pair(r.lo, r.hi);
    }
    if (!raw.tol.empty())
      cfg.tolerances =
          psilab::cli::parse_tolerance_overrides(raw.tol, cfg.tolerances);
    cfg.format = raw.format;
    cfg.emit_timing = !raw.no_timing;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return psilab::cli::kExitError;
  }

  return psilab::cli::run(cfg, std::cerr);
}
