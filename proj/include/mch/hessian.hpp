#pragma once

#include <array>

namespace mch {

struct HessianReport {
  std::array<std::array<double, 2>, 2> M{};
  double det_numeric = 0.0;
  double det_closed_form = 0.0;
  std::array<double, 2> eigenvalues{};  // real; det < 0 forces opposite signs
  int n_plus = 0, n_minus = 0;
};

// Closed form of det M: -(16/kappa^2) * sqrt((c1-k^2)(c2-k^2)(c1-3k^2)(c2-3k^2)).
double det_closed_form(double c1, double c2, double kappa);

// Hessian of the constrained problem assembled as
// [dF_i/dc_j] * [dlambda_i/dc_j]^{-1}, both Jacobians by Richardson-
// extrapolated central differences of the closed forms.
HessianReport hessian_M(double c1, double c2, double kappa);

}  // namespace mch
