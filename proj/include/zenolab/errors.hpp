#pragma once

#include <stdexcept>
#include <string>

namespace zenolab {

// Numerical-guard violation (e.g. box-edge mass). CLI maps this to exit 3,
// while std::invalid_argument (precondition/validation failures) maps to 2.
struct GuardTrip : std::runtime_error {
  std::string guard;
  GuardTrip(std::string guard_name, const std::string& what)
      : std::runtime_error("guard '" + guard_name + "' tripped: " + what),
        guard(std::move(guard_name)) {}
};

struct EigenFailure : std::runtime_error {
  double residual;
  EigenFailure(const std::string& what, double res)
      : std::runtime_error(what), residual(res) {}
};

}  // namespace zenolab
