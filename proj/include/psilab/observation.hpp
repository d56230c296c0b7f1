#pragma once

#include <string>
#include <string_view>

namespace psilab {

// A point of the observation space. Two backends: finite real scalars
// (compared by exact floating value) and interned symbols from a finite
// alphabet (compared lexicographically). Observations are never produced by
// arithmetic inside the library, so comparing stored representations is
// exact; reals sort before symbols to keep mixed alphabets totally ordered.
class Observation {
 public:
  Observation() = default;

  static Observation real(double v);
  static Observation symbol(std::string label);

  /// Numeric text becomes a real observation, anything else a symbol.
  static Observation parse(std::string_view text);

  bool is_real() const { return kind_ == Kind::Real; }
  bool is_symbol() const { return kind_ == Kind::Symbol; }

  /// Value of a real observation; throws for symbols.
  double numeric() const;

  /// Canonical text form (shortest round-trip decimal for reals).
  std::string label() const;

  friend bool operator==(const Observation& a, const Observation& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ == Kind::Real ? a.value_ == b.value_ : a.label_ == b.label_;
  }

  friend bool operator<(const Observation& a, const Observation& b) {
    if (a.kind_ != b.kind_) return a.kind_ == Kind::Real;
    return a.kind_ == Kind::Real ? a.value_ < b.value_ : a.label_ < b.label_;
  }

 private:
  enum class Kind { Real, Symbol };
  Kind kind_ = Kind::Real;
  double value_ = 0.0;
  std::string label_;
};

}  // namespace psilab
