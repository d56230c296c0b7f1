#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "psilab/observation.hpp"

namespace psilab {

// Finite multiset of observations with int64 multiplicities, kept in
// canonical form (entries sorted by observation, multiplicities merged,
// every multiplicity >= 1). Equality of canonical forms is multiset
// equality. The empty sample is constructible as a building block, but the
// statistical operations all require size() >= 1.
class WeightedSample {
 public:
  using Entry = std::pair<Observation, std::int64_t>;

  WeightedSample() = default;

  static WeightedSample single(Observation x, std::int64_t multiplicity = 1);
  static WeightedSample from_list(std::span<const Observation> xs);
  static WeightedSample from_pairs(std::vector<Entry> entries);

  /// Total count, multiplicities included.
  std::int64_t size() const;

  std::size_t distinct() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const std::vector<Entry>& entries() const { return entries_; }

  /// Smallest / largest observation (canonical order). Sample must be
  /// nonempty.
  const Observation& min() const;
  const Observation& max() const;

  std::string to_string() const;

  friend bool operator==(const WeightedSample&,
                         const WeightedSample&) = default;

 private:
  std::vector<Entry> entries_;
};

/// Multiset union: multiplicities add. Commutative and associative.
WeightedSample concat(const WeightedSample& a, const WeightedSample& b);

/// Every multiplicity scaled by n (n >= 1).
WeightedSample replicate(const WeightedSample& a, std::int64_t n);

}  // namespace psilab
