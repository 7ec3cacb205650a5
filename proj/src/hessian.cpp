#include "mch/hessian.hpp"

#include <cmath>

#include "mch/errors.hpp"
#include "mch/functionals.hpp"

namespace mch {

namespace {

// Richardson-extrapolated central difference in the speed argument.
template <class F>
double speed_derivative(F&& f, double c, double kappa) {
  const double k2 = kappa * kappa;
  double step = 1e-4 * (c - 3.0 * k2);
  step = std::min(step, 0.1 * (9.0 * k2 - c));
  const auto central = [&](double s) { return (f(c + s) - f(c - s)) / (2.0 * s); };
  const double coarse = central(step);
  const double fine = central(0.5 * step);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

double det_closed_form(double c1, double c2, double kappa) {
  const double k2 = kappa * kappa;
  auto check = [&](double c) {
    if (!(kappa > 0.0) || !(c > 3.0 * k2) || !(c < 9.0 * k2))
      throw SpeedOutOfWindow(c, kappa);
  };
  check(c1);
  check(c2);
  return -16.0 / k2 *
         std::sqrt((c1 - k2) * (c2 - k2) * (c1 - 3.0 * k2) * (c2 - 3.0 * k2));
}

HessianReport hessian_M(double c1, double c2, double kappa) {
  if (!(c2 < c1)) throw SpeedOrdering();

  // dF_i/dc_j: the two-soliton invariants are sums of single-soliton closed
  // forms, so the Jacobian columns are single-speed derivatives.
  auto f1 = [&](double c) { return closed_form_invariants(c, kappa).first; };
  auto f2 = [&](double c) { return closed_form_invariants(c, kappa).second; };
  const double F[2][2] = {
      {speed_derivative(f1, c1, kappa), speed_derivative(f1, c2, kappa)},
      {speed_derivative(f2, c1, kappa), speed_derivative(f2, c2, kappa)}};

  // The multiplier formulas are symmetric in (c1, c2); evaluate them without
  // the ordering guard so finite-difference probes may cross the diagonal.
  const double k2 = kappa * kappa;
  auto lam = [&](double a, double b, int which) {
    const double r1 = 1.0 / (a - k2), r2 = 1.0 / (b - k2);
    if (which == 1)
      return -1.0 / (16.0 * k2 * k2) + (r1 + r2) / (2.0 * k2) + 2.0 * r1 * r2;
    return -(1.0 / (4.0 * k2) + r1 + r2);
  };
  auto l1c1 = [&](double c) { return lam(c, c2, 1); };
  auto l2c1 = [&](double c) { return lam(c, c2, 2); };
  auto l1c2 = [&](double c) { return lam(c1, c, 1); };
  auto l2c2 = [&](double c) { return lam(c1, c, 2); };
  const double L[2][2] = {
      {speed_derivative(l1c1, c1, kappa), speed_derivative(l1c2, c2, kappa)},
      {speed_derivative(l2c1, c1, kappa), speed_derivative(l2c2, c2, kappa)}};

  const double detL = L[0][0] * L[1][1] - L[0][1] * L[1][0];
  double scaleL = 0.0;
  for (auto& row : L)
    for (double v : row) scaleL = std::max(scaleL, std::abs(v));
  // the columns coincide as c1 -> c2; below this relative determinant the
  // cancellation eats the finite-difference accuracy
  if (std::abs(detL) < 1e-7 * scaleL * scaleL) throw SingularJacobian();

  const double inv[2][2] = {{L[1][1] / detL, -L[0][1] / detL},
                            {-L[1][0] / detL, L[0][0] / detL}};

  HessianReport rep;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      rep.M[i][j] = F[i][0] * inv[0][j] + F[i][1] * inv[1][j];

  rep.det_numeric = rep.M[0][0] * rep.M[1][1] - rep.M[0][1] * rep.M[1][0];
  rep.det_closed_form = det_closed_form(c1, c2, kappa);

  // Eigenvalues of the (generally nonsymmetric) 2x2 by the quadratic formula.
  const double tr = rep.M[0][0] + rep.M[1][1];
  const double disc = tr * tr - 4.0 * rep.det_numeric;
  if (disc < 0.0)
    throw NumericalError("Hessian eigenvalues are not real");
  const double root = std::sqrt(disc);
  rep.eigenvalues = {0.5 * (tr - root), 0.5 * (tr + root)};
  for (double ev : rep.eigenvalues) (ev > 0.0 ? rep.n_plus : rep.n_minus)++;
  return rep;
}

}  // namespace mch
