#pragma once

#include <stdexcept>
#include <string>

namespace mch {

// Validation errors: bad parameters or inputs that violate a precondition.
// The CLI maps these to exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failures: the computation started but could not finish.
// The CLI maps these to exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpeedOutOfWindow : ValidationError {
  SpeedOutOfWindow(double c, double kappa)
      : ValidationError("speed " + std::to_string(c) +
                        " outside (3*kappa^2, 9*kappa^2) for kappa = " +
                        std::to_string(kappa)) {}
};

struct SpeedOrdering : ValidationError {
  SpeedOrdering() : ValidationError("speed ordering violated: need c2 < c1") {}
};

struct DegenerateSpeeds : ValidationError {
  DegenerateSpeeds() : ValidationError("degenerate speeds: k1 == k2") {}
};

struct RangeExceeded : ValidationError {
  using ValidationError::ValidationError;
};

struct GridMismatch : ValidationError {
  GridMismatch() : ValidationError("fields live on different grids") {}
};

struct SqrtDomain : ValidationError {
  SqrtDomain() : ValidationError("E - 4*A*phi <= 0: outside the orbit domain") {}
};

struct NonMonotoneMap : NumericalError {
  NonMonotoneMap() : NumericalError("computed m <= 0: x(y) not monotone") {}
};

struct PositivityViolated : NumericalError {
  PositivityViolated() : NumericalError("momentum field has min m <= 0") {}
};

struct EigensolverFailure : NumericalError {
  using NumericalError::NumericalError;
};

struct DegenerateInput : NumericalError {
  DegenerateInput() : NumericalError("kernel directions numerically parallel") {}
};

struct SingularJacobian : NumericalError {
  SingularJacobian() : NumericalError("multiplier Jacobian is singular") {}
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mch
