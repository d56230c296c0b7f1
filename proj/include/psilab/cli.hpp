#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "psilab/sample.hpp"
#include "psilab/score.hpp"

namespace psilab::cli {

/// Exit codes: 0 success / all checks pass, 1 operational error (parse
/// failure, no bracket, bad flags), 2 falsification (a Fail verdict or an
/// infeasibility certificate).
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFalsified = 2;

enum class DataFormat { Auto, Csv, Json };

/// Reads a sample from disk. CSV: one `value` or `value,count` per line,
/// '#' comments allowed; duplicates merge. JSON: array of numbers or of
/// {"value": v, "count": k} records. Errors carry line numbers.
WeightedSample ingest_sample(const std::string& path,
                             DataFormat format = DataFormat::Auto);

/// Score family mini-language: qa:id | qa:ln | qa:recip | qa:pow:<p> |
/// huber:<kappa> | arctan | median | step | table:<path>.
ScoreFamily parse_psi_spec(const std::string& spec);

/// "lo:hi" with -inf/inf accepted.
ParameterInterval parse_theta(const std::string& text);

/// "key=value,key=value" over the Tolerances fields.
Tolerances parse_tolerance_overrides(const std::string& text, Tolerances base);

struct RunConfig {
  std::string command;     // estimate | audit | kolmogorov | diagnose |
                           // synthesize | catalog
  std::string subcommand;  // diagnose: ratio | zlimits | semigroup;
                           // catalog: list
  std::string psi_spec;
  std::string mean_name;
  std::string data_path;
  std::string x_data_path;
  std::string y_data_path;
  std::optional<double> y_value;
  std::vector<std::string> axioms;
  std::optional<ParameterInterval> theta;
  Tolerances tolerances;
  std::uint64_t seed = 1;
  std::optional<std::pair<double, double>> pool_range;
  std::string alphabet;  // comma-separated observations
  int max_block = 6;
  long trials = 1000;
  double check_tolerance = 1e-9;
  double limit_tol = 1e-8;
  int grid_size = 100;
  int max_size = 4;
  std::optional<double> t_value;
  std::string core_a_path;
  std::string core_s_path;
  std::int64_t n_max = 100;
  std::string probe = "closure";  // diagnose semigroup: closure | core
  std::string out_path;           // empty = stdout
  std::string table_out;          // synthesize: table file path
  std::string format = "json";    // json | csv
  bool emit_timing = true;        // timing block in the report
};

/// Executes one command, writes the report, returns the exit code.
/// Reports are byte-identical for identical configs and seeds, timing block
/// aside.
int run(const RunConfig& cfg, std::ostream& diagnostics);

}  // namespace psilab::cli
