#include "psilab/synthesis.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>

#include "psilab/common.hpp"
#include "psilab/interval.hpp"
#include "psilab/lp.hpp"
#include "psilab/semigroup.hpp"

namespace psilab {

namespace {

// Multiplicity vector of s over the alphabet, exact integers.
std::vector<std::int64_t> multiplicities(
    std::span<const Observation> alphabet, const WeightedSample& s) {
  std::vector<std::int64_t> m(alphabet.size(), 0);
  for (const auto& [x, mult] : s.entries()) {
    bool found = false;
    for (std::size_t j = 0; j < alphabet.size(); ++j) {
      if (alphabet[j] == x) {
        m[j] += mult;
        found = true;
        break;
      }
    }
    if (!found) {
      throw error("synthesis: sample symbol " + x.label() +
                  " is not in the alphabet");
    }
  }
  return m;
}

std::size_t nearest_column(const std::vector<double>& grid, double t) {
  std::size_t best = 0;
  double best_d = std::fabs(grid[0] - t);
  for (std::size_t j = 1; j < grid.size(); ++j) {
    double d = std::fabs(grid[j] - t);
    if (d < best_d) {
      best = j;
      best_d = d;
    }
  }
  return best;
}

}  // namespace

double PsiTable::eval(const Observation& x, double t) const {
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (alphabet[i] == x) return values[i][nearest_column(theta_grid, t)];
  }
  throw error("psi table: symbol " + x.label() + " is not tabulated");
}

ScoreFamily PsiTable::as_score_family(std::string name) const {
  ScoreFamily fam;
  fam.name = std::move(name);
  fam.domain = ParameterInterval::whole_line();
  fam.claims = {};
  auto self = *this;
  fam.eval = [self](const Observation& x, double t) {
    return self.eval(x, t);
  };
  return fam;
}

bool InfeasibilityCertificate::revalidate(
    std::span<const Observation> alphabet) const {
  if (below.empty() || above.empty()) return false;
  std::vector<std::int64_t> lhs(alphabet.size(), 0);
  std::vector<std::int64_t> rhs(alphabet.size(), 0);
  for (const auto& [s, k] : below) {
    if (k <= 0) return false;
    auto m = multiplicities(alphabet, s);
    for (std::size_t j = 0; j < m.size(); ++j) lhs[j] += k * m[j];
  }
  for (const auto& [s, k] : above) {
    if (k <= 0) return false;
    auto m = multiplicities(alphabet, s);
    for (std::size_t j = 0; j < m.size(); ++j) rhs[j] += k * m[j];
  }
  return lhs == rhs;
}

SynthesisResult synthesize_psi(const EstimatorOracle& m,
                               std::span<const Observation> alphabet,
                               std::span<const double> theta_grid,
                               int max_size, double boundary_tol) {
  if (theta_grid.empty()) throw error("synthesize_psi: empty grid");
  for (std::size_t j = 1; j < theta_grid.size(); ++j) {
    if (!(theta_grid[j] > theta_grid[j - 1]))
      throw error("synthesize_psi: grid must be strictly increasing");
  }

  std::vector<WeightedSample> pool = enumerate_multisets(alphabet, max_size);
  std::vector<std::vector<std::int64_t>> mults;
  std::vector<double> estimates;
  mults.reserve(pool.size());
  estimates.reserve(pool.size());
  for (const auto& s : pool) {
    mults.push_back(multiplicities(alphabet, s));
    estimates.push_back(mu(m, s));
  }

  SynthesisResult res;
  res.multiset_count = static_cast<long>(pool.size());
  res.table.alphabet.assign(alphabet.begin(), alphabet.end());
  res.table.theta_grid.assign(theta_grid.begin(), theta_grid.end());
  res.table.boundary_tol = boundary_tol;
  res.table.values.assign(alphabet.size(),
                          std::vector<double>(theta_grid.size(), 0.0));
  res.table.margins.assign(theta_grid.size(), 0.0);
  res.boundary_drops.assign(theta_grid.size(), 0);
  res.feasible = true;

  const std::size_t k = alphabet.size();
  for (std::size_t g = 0; g < theta_grid.size(); ++g) {
    double t = theta_grid[g];
    std::vector<std::size_t> below, above;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (std::fabs(estimates[i] - t) <= boundary_tol) {
        ++res.boundary_drops[g];
      } else if (estimates[i] < t) {
        below.push_back(i);
      } else {
        above.push_back(i);
      }
    }

    // Variables: u_x = c_x + 1 in [0, 2] for each symbol, then epsilon.
    // Row for mu(s) < t:  sum m_s(x) c_x + eps <= 0
    //                 ->  sum m_s(x) u_x + eps <= sum m_s(x)
    // Row for mu(s) > t:  sum m_s(x) c_x - eps >= 0
    //                 -> -sum m_s(x) u_x + eps <= -sum m_s(x)
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    std::vector<double> c(k + 1, 0.0);
    c[k] = 1.0;
    for (std::size_t i : below) {
      std::vector<double> row(k + 1, 0.0);
      double total = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        row[j] = static_cast<double>(mults[i][j]);
        total += row[j];
      }
      row[k] = 1.0;
      A.push_back(std::move(row));
      b.push_back(total);
    }
    for (std::size_t i : above) {
      std::vector<double> row(k + 1, 0.0);
      double total = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        row[j] = -static_cast<double>(mults[i][j]);
        total += mults[i][j];
      }
      row[k] = 1.0;
      A.push_back(std::move(row));
      b.push_back(-total);
    }
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<double> row(k + 1, 0.0);
      row[j] = 1.0;
      A.push_back(std::move(row));
      b.push_back(2.0);
    }
    {
      // One side can be empty, which leaves epsilon otherwise uncapped.
      std::vector<double> row(k + 1, 0.0);
      row[k] = 1.0;
      A.push_back(std::move(row));
      b.push_back(static_cast<double>(max_size) + 1.0);
    }

    lp::Result sol = lp::solve_max(A, b, c);
    if (sol.status == lp::Status::Optimal && sol.objective > 1e-9) {
      for (std::size_t j = 0; j < k; ++j) {
        res.table.values[j][g] = sol.x[j] - 1.0;
      }
      res.table.margins[g] = sol.objective;
      continue;
    }

    // Separation failed at this level; hunt for an exact combination that
    // proves it. Two below-level multisets whose union sits above the level
    // (or the mirror image) is the smallest possible contradiction; failing
    // that, try triples from one side.
    res.feasible = false;
    InfeasibilityCertificate cert;
    cert.t = t;
    auto side_of_estimate = [&](double est) {
      if (std::fabs(est - t) <= boundary_tol) return 0;
      return est < t ? -1 : 1;
    };
    bool moved_from_below = false;
    auto record = [&](std::vector<std::size_t> group, int want,
                      const WeightedSample& u) {
      auto& moved = want == 1 ? cert.below : cert.above;
      auto& landed = want == 1 ? cert.above : cert.below;
      std::map<std::size_t, std::int64_t> counted;
      for (std::size_t i : group) ++counted[i];
      for (const auto& [i, n] : counted) moved.push_back({pool[i], n});
      landed.push_back({u, 1});
      moved_from_below = want == 1;
    };
    auto try_pairs = [&](const std::vector<std::size_t>& side, int want) {
      for (std::size_t a = 0; a < side.size(); ++a) {
        for (std::size_t bdx = a; bdx < side.size(); ++bdx) {
          WeightedSample u = concat(pool[side[a]], pool[side[bdx]]);
          if (side_of_estimate(mu(m, u)) != want) continue;
          record({side[a], side[bdx]}, want, u);
          return true;
        }
      }
      return false;
    };
    auto try_triples = [&](const std::vector<std::size_t>& side, int want) {
      if (side.size() > 60) return false;
      for (std::size_t a = 0; a < side.size(); ++a) {
        for (std::size_t bdx = a; bdx < side.size(); ++bdx) {
          WeightedSample ab = concat(pool[side[a]], pool[side[bdx]]);
          for (std::size_t cdx = bdx; cdx < side.size(); ++cdx) {
            WeightedSample u = concat(ab, pool[side[cdx]]);
            if (side_of_estimate(mu(m, u)) != want) continue;
            record({side[a], side[bdx], side[cdx]}, want, u);
            return true;
          }
        }
      }
      return false;
    };
    bool found = try_pairs(below, 1) || try_pairs(above, -1) ||
                 try_triples(below, 1) || try_triples(above, -1);
    if (found) {
      const auto& moved = moved_from_below ? cert.below : cert.above;
      const char* from = moved_from_below ? "below" : "above";
      const char* to = moved_from_below ? "above" : "below";
      std::ostringstream os;
      os << "at t = " << format_double(t) << ", combining ";
      bool first = true;
      for (const auto& [s, n] : moved) {
        if (!first) os << " and ";
        first = false;
        os << s.to_string();
        if (n > 1) os << " taken " << n << "x";
      }
      os << " (each estimating " << from << " the level) yields a sample "
         << "estimating " << to << " it, so no single score column can "
         << "order both sides";
      cert.witness_text = os.str();
      res.certificate = std::move(cert);
    } else {
      res.note = "separation failed at t = " + format_double(t) +
                 " but no small union witness exists within the enumerated "
                 "pool; the obstruction needs a larger combination";
    }
    return res;
  }
  return res;
}

VerifyReport verify_synthesis(const PsiTable& table, const EstimatorOracle& m,
                              std::span<const Observation> alphabet,
                              int max_size) {
  VerifyReport rep;
  std::vector<WeightedSample> pool = enumerate_multisets(alphabet, max_size);
  for (const auto& s : pool) {
    double est = mu(m, s);
    for (std::size_t g = 0; g < table.theta_grid.size(); ++g) {
      double t = table.theta_grid[g];
      if (std::fabs(est - t) <= table.boundary_tol) {
        ++rep.boundary_skipped;
        continue;
      }
      ++rep.checked;
      double sum = 0.0;
      for (const auto& [x, mult] : s.entries()) {
        sum += static_cast<double>(mult) * table.eval(x, t);
      }
      int expected = est < t ? -1 : 1;
      bool good = expected < 0 ? sum < 0.0 : sum > 0.0;
      if (!good) {
        rep.violations.push_back({s, t, sum, expected});
      }
    }
  }
  return rep;
}

void write_psi_table(const PsiTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error("cannot open " + path + " for writing");
  out << "psilab-table 1\n";
  out << "orientation decreasing-type\n";
  out << "boundary_tol " << format_double(table.boundary_tol) << "\n";
  out << "alphabet " << table.alphabet.size() << "\n";
  for (const auto& x : table.alphabet) out << x.label() << "\n";
  out << "grid " << table.theta_grid.size() << "\n";
  for (std::size_t j = 0; j < table.theta_grid.size(); ++j) {
    out << (j ? " " : "") << format_double(table.theta_grid[j]);
  }
  out << "\nmargins";
  for (double v : table.margins) out << " " << format_double(v);
  out << "\n";
  for (const auto& row : table.values) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << (j ? " " : "") << format_double(row[j]);
    }
    out << "\n";
  }
  if (!out) throw error("write to " + path + " failed");
}

namespace {

std::string read_line(std::istream& in, const std::string& path) {
  std::string line;
  if (!std::getline(in, line)) throw error(path + ": truncated table file");
  return line;
}

double parse_dbl(const std::string& tok, const std::string& path) {
  Observation o = Observation::parse(tok);
  if (!o.is_real()) throw error(path + ": expected a number, got " + tok);
  return o.numeric();
}

std::vector<double> parse_row(const std::string& line, std::size_t want,
                              const std::string& path) {
  std::istringstream is(line);
  std::vector<double> row;
  std::string tok;
  while (is >> tok) row.push_back(parse_dbl(tok, path));
  if (row.size() != want) {
    throw error(path + ": expected " + std::to_string(want) +
                " values per row, got " + std::to_string(row.size()));
  }
  return row;
}

}  // namespace

PsiTable read_psi_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  if (read_line(in, path) != "psilab-table 1")
    throw error(path + ": not a psilab table file");
  if (read_line(in, path) != "orientation decreasing-type")
    throw error(path + ": unsupported orientation");

  PsiTable table;
  {
    std::istringstream is(read_line(in, path));
    std::string key;
    is >> key >> std::ws;
    std::string tok;
    if (key != "boundary_tol" || !(is >> tok))
      throw error(path + ": malformed boundary_tol line");
    table.boundary_tol = parse_dbl(tok, path);
  }
  std::size_t n_alpha = 0;
  {
    std::istringstream is(read_line(in, path));
    std::string key;
    if (!(is >> key >> n_alpha) || key != "alphabet" || n_alpha == 0)
      throw error(path + ": malformed alphabet line");
  }
  for (std::size_t i = 0; i < n_alpha; ++i) {
    table.alphabet.push_back(Observation::parse(read_line(in, path)));
  }
  std::size_t n_grid = 0;
  {
    std::istringstream is(read_line(in, path));
    std::string key;
    if (!(is >> key >> n_grid) || key != "grid" || n_grid == 0)
      throw error(path + ": malformed grid line");
  }
  table.theta_grid = parse_row(read_line(in, path), n_grid, path);
  {
    std::string line = read_line(in, path);
    if (line.rfind("margins", 0) != 0)
      throw error(path + ": malformed margins line");
    table.margins = parse_row(line.substr(7), n_grid, path);
  }
  for (std::size_t i = 0; i < n_alpha; ++i) {
    table.values.push_back(parse_row(read_line(in, path), n_grid, path));
  }
  return table;
}

}  // namespace psilab
