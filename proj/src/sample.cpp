#include "psilab/sample.hpp"

#include <algorithm>
#include <map>

#include "psilab/common.hpp"

namespace psilab {

namespace {

std::vector<WeightedSample::Entry> canonicalize(
    std::vector<WeightedSample::Entry> raw) {
  std::map<Observation, std::int64_t> merged;
  for (auto& [obs, mult] : raw) {
    if (mult <= 0) throw error("multiplicity must be positive");
    merged[obs] += mult;
  }
  std::vector<WeightedSample::Entry> out;
  out.reserve(merged.size());
  for (auto& [obs, mult] : merged) out.emplace_back(obs, mult);
  return out;
}

}  // namespace

WeightedSample WeightedSample::single(Observation x,
                                      std::int64_t multiplicity) {
  if (multiplicity <= 0) throw error("multiplicity must be positive");
  WeightedSample s;
  s.entries_.emplace_back(std::move(x), multiplicity);
  return s;
}

WeightedSample WeightedSample::from_list(std::span<const Observation> xs) {
  if (xs.empty()) throw error("sample must be nonempty");
  std::vector<Entry> raw;
  raw.reserve(xs.size());
  for (const auto& x : xs) raw.emplace_back(x, 1);
  WeightedSample s;
  s.entries_ = canonicalize(std::move(raw));
  return s;
}

WeightedSample WeightedSample::from_pairs(std::vector<Entry> entries) {
  if (entries.empty()) throw error("sample must be nonempty");
  WeightedSample s;
  s.entries_ = canonicalize(std::move(entries));
  return s;
}

std::int64_t WeightedSample::size() const {
  std::int64_t n = 0;
  for (const auto& [obs, mult] : entries_) n += mult;
  return n;
}

const Observation& WeightedSample::min() const {
  if (entries_.empty()) throw error("sample is empty");
  return entries_.front().first;
}

const Observation& WeightedSample::max() const {
  if (entries_.empty()) throw error("sample is empty");
  return entries_.back().first;
}

std::string WeightedSample::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [obs, mult] : entries_) {
    if (!first) out += ", ";
    first = false;
    out += obs.label();
    if (mult != 1) out += "*" + std::to_string(mult);
  }
  out += "}";
  return out;
}

WeightedSample concat(const WeightedSample& a, const WeightedSample& b) {
  std::vector<WeightedSample::Entry> raw(a.entries().begin(),
                                         a.entries().end());
  raw.insert(raw.end(), b.entries().begin(), b.entries().end());
  return WeightedSample::from_pairs(std::move(raw));
}

WeightedSample replicate(const WeightedSample& a, std::int64_t n) {
  if (n <= 0) throw error("replication count must be positive");
  std::vector<WeightedSample::Entry> raw;
  raw.reserve(a.entries().size());
  for (const auto& [obs, mult] : a.entries()) raw.emplace_back(obs, mult * n);
  return WeightedSample::from_pairs(std::move(raw));
}

}  // namespace psilab
