#pragma once

#include <stdexcept>
#include <string>

namespace psilab {

/// Library-wide error type for precondition and input failures.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Shortest decimal text that parses back to exactly v.
std::string format_double(double v);

}  // namespace psilab
