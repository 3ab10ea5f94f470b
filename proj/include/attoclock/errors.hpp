#pragma once

#include <stdexcept>
#include <string>

namespace attoclock {

/// Invalid argument outside a function's mathematical domain.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An iterative solver ran out of iterations without meeting its residual target.
struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature could not reach the requested tolerance.
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive ODE stepping failed (step size underflow or step budget exhausted).
struct StepFailureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A trajectory dived inside the core guard radius.
struct CoreCollisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Field evaluates to (numerically) zero where a nonzero value is required.
struct DegenerateFieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Post-pulse state has non-positive Kepler energy: the electron is recaptured.
struct BoundOrbitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid user-facing configuration (CLI flags or config file).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace attoclock
