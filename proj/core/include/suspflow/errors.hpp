#pragma once

#include <stdexcept>
#include <string>

namespace suspflow {

/// Matrix trace has modulus <= 2, so the automorphism is not hyperbolic.
struct NotHyperbolic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested a derivative of a conjugacy that is not declared differentiable.
struct NotDifferentiable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested the inverse of a conjugacy that has none declared.
struct NotInvertible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature could not reach the requested tolerance in budget.
struct QuadratureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The fiber bump dips to -1 or below, so the reparametrization would fold.
struct MonotonicityViolation : std::runtime_error {
  MonotonicityViolation(const std::string& what, double x1, double x2, double margin)
      : std::runtime_error(what), fiber_x1(x1), fiber_x2(x2), derivative_margin(margin) {}
  double fiber_x1;
  double fiber_x2;
  double derivative_margin;  // min over the fiber of phi' (non-positive here)
};

/// Argument outside the domain of a fiber reparametrization.
struct OutOfDomain : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A finite-difference stencil or chart coordinate left its valid box.
struct StepTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The piecewise Jacobian is undefined on the section {height = 0}.
struct OnSection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Configuration parse/validation failure; names the offending key.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& key_, const std::string& what)
      : std::runtime_error("config key '" + key_ + "': " + what), key(key_) {}
  std::string key;
};

}  // namespace suspflow
