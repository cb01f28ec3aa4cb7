#pragma once

#include <stdexcept>

namespace milplan {

// Base for runtime numerical failures (as opposed to precondition violations,
// which throw std::invalid_argument).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Jacobian lost rank along a path or at a projection target.
class RankDeficiencyError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Newton or another iteration failed to reach tolerance within its budget.
class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

// A tracked point left the ambient ball it must stay inside.
class BallExitError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Could not connect two points through a fiber within the retry budget.
class FiberPathError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace milplan
