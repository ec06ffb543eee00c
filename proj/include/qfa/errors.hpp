#pragma once

#include <stdexcept>

namespace qfa {

/// Input data violates a structural invariant (location in the message).
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A required structure constant is not certified at the current window.
struct OutOfWindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A computation required window stability that the input lacks.
struct NotConvergedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IncompatibleAlgebrasError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rewriting hit its step budget; indicates a bug, termination is proved.
struct StepLimitExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Level cap too small for a faithful finite shadow.
struct CapTooSmallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qfa
