#include "psilab/observation.hpp"

#include <charconv>
#include <cmath>

#include "psilab/common.hpp"

namespace psilab {

Observation Observation::real(double v) {
  if (std::isnan(v)) throw error("observation value must not be NaN");
  Observation o;
  o.kind_ = Kind::Real;
  o.value_ = v;
  return o;
}

Observation Observation::symbol(std::string label) {
  if (label.empty()) throw error("symbol label must be nonempty");
  Observation o;
  o.kind_ = Kind::Symbol;
  o.label_ = std::move(label);
  return o;
}

Observation Observation::parse(std::string_view text) {
  if (!text.empty()) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc() && ptr == text.data() + text.size() &&
        !std::isnan(v)) {
      return real(v);
    }
  }
  return symbol(std::string(text));
}

double Observation::numeric() const {
  if (kind_ != Kind::Real) {
    throw error("observation '" + label_ + "' has no numeric value");
  }
  return value_;
}

std::string Observation::label() const {
  return kind_ == Kind::Real ? format_double(value_) : label_;
}

}  // namespace psilab
