#pragma once

#include <stdexcept>
#include <string>

namespace dap {

// Bad user input: parameters, config keys, argument preconditions.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failure at runtime: no crossing in a bracket, quadrature that
// cannot reach its tolerance, degenerate conditioning.
class NumericalError : public std::runtime_error {
 public:
  enum class Kind { NoCrossing, QuadratureNonConvergence, NoDapUsers, Degenerate };

  NumericalError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace dap
