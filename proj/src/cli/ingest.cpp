#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "psilab/cli.hpp"
#include "psilab/common.hpp"

namespace psilab::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_count(const std::string& text, std::int64_t& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [p, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && p == last;
}

double parse_real_token(const std::string& text, const std::string& what) {
  Observation o = Observation::parse(trim(text));
  if (!o.is_real()) throw error(what + ": expected a number, got '" + text + "'");
  return o.numeric();
}

WeightedSample ingest_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  std::vector<WeightedSample::Entry> entries;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::string value_text = line;
    std::int64_t count = 1;
    if (auto comma = line.find(','); comma != std::string::npos) {
      value_text = trim(line.substr(0, comma));
      std::string count_text = trim(line.substr(comma + 1));
      if (!parse_count(count_text, count)) {
        throw error(path + ": bad count '" + count_text + "' at line " +
                    std::to_string(line_no));
      }
      if (count <= 0) {
        throw error(path + ": count not positive at line " +
                    std::to_string(line_no));
      }
    }
    if (value_text.empty()) {
      throw error(path + ": empty value at line " + std::to_string(line_no));
    }
    entries.emplace_back(Observation::parse(value_text), count);
  }
  if (entries.empty()) throw error(path + ": no observations");
  return WeightedSample::from_pairs(std::move(entries));
}

WeightedSample ingest_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw error(path + ": " + e.what());
  }
  if (!doc.is_array()) throw error(path + ": expected a top-level array");
  std::vector<WeightedSample::Entry> entries;
  long idx = 0;
  for (const auto& item : doc) {
    ++idx;
    std::string at = path + ": element " + std::to_string(idx);
    if (item.is_number()) {
      entries.emplace_back(Observation::real(item.get<double>()), 1);
    } else if (item.is_string()) {
      entries.emplace_back(Observation::parse(item.get<std::string>()), 1);
    } else if (item.is_object()) {
      if (!item.contains("value")) throw error(at + ": missing 'value'");
      std::int64_t count = 1;
      if (item.contains("count")) {
        if (!item["count"].is_number_integer())
          throw error(at + ": count must be an integer");
        count = item["count"].get<std::int64_t>();
        if (count <= 0) throw error(at + ": count not positive");
      }
      const auto& v = item["value"];
      Observation obs = v.is_number()
                            ? Observation::real(v.get<double>())
                            : Observation::parse(v.get<std::string>());
      entries.emplace_back(obs, count);
    } else {
      throw error(at + ": expected a number, string, or {value, count}");
    }
  }
  if (entries.empty()) throw error(path + ": no observations");
  return WeightedSample::from_pairs(std::move(entries));
}

}  // namespace

WeightedSample ingest_sample(const std::string& path, DataFormat format) {
  if (format == DataFormat::Auto) {
    format = path.size() >= 5 && path.substr(path.size() - 5) == ".json"
                 ? DataFormat::Json
                 : DataFormat::Csv;
  }
  return format == DataFormat::Json ? ingest_json(path) : ingest_csv(path);
}

ParameterInterval parse_theta(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw error("theta interval must look like lo:hi, got '" + text + "'");
  auto endpoint = [&](const std::string& tok, double inf_sign) {
    std::string t = trim(tok);
    if (t == "inf" || t == "+inf" || t == "-inf") {
      double inf = std::numeric_limits<double>::infinity();
      return t == "-inf" ? -inf : inf;
    }
    if (t.empty()) return inf_sign * std::numeric_limits<double>::infinity();
    return parse_real_token(t, "theta endpoint");
  };
  double lo = endpoint(text.substr(0, colon), -1.0);
  double hi = endpoint(text.substr(colon + 1), +1.0);
  return ParameterInterval::open(lo, hi);
}

Tolerances parse_tolerance_overrides(const std::string& text,
                                     Tolerances base) {
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw error("tolerance override must look like key=value: '" + item + "'");
    std::string key = trim(item.substr(0, eq));
    std::string val = trim(item.substr(eq + 1));
    double v = parse_real_token(val, "tolerance " + key);
    if (key == "bracket_growth") {
      base.bracket_growth = v;
    } else if (key == "root_abs_tol") {
      base.root_abs_tol = v;
    } else if (key == "plateau_width_tol") {
      base.plateau_width_tol = v;
    } else if (key == "zero_tol") {
      base.zero_tol = v;
    } else if (key == "max_bracket_steps") {
      base.max_bracket_steps = static_cast<int>(v);
    } else if (key == "max_bisect_steps") {
      base.max_bisect_steps = static_cast<int>(v);
    } else {
      throw error("unknown tolerance key '" + key + "'");
    }
  }
  base.validate();
  return base;
}

}  // namespace psilab::cli
