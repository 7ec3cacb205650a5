#include "mch/params.hpp"

#include <cmath>
#include <utility>

#include "mch/errors.hpp"

namespace mch {

namespace {

void check_speed(double c, double kappa) {
  if (!(kappa > 0.0)) throw ValidationError("kappa must be positive");
  const double k2 = kappa * kappa;
  if (!(c > 3.0 * k2) || !(c < 9.0 * k2)) throw SpeedOutOfWindow(c, kappa);
}

// Golden-section maximization on a unimodal bracket.
template <class F>
double golden_max(F&& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double wavenumber_from_speed(double c, double kappa) {
  check_speed(c, kappa);
  const double k2 = kappa * kappa;
  return std::sqrt((c - 3.0 * k2) / (c - k2)) / kappa;
}

SolitonParams build_params(double kappa, double c1, double c2, double y10,
                           double y20, double d) {
  check_speed(c1, kappa);
  check_speed(c2, kappa);
  if (!(c2 < c1)) throw SpeedOrdering();

  SolitonParams p;
  p.kappa = kappa;
  p.c1 = c1;
  p.c2 = c2;
  p.y10 = y10;
  p.y20 = y20;
  p.d = d;
  p.k1 = wavenumber_from_speed(c1, kappa);
  p.k2 = wavenumber_from_speed(c2, kappa);
  const double kk1 = kappa * p.k1, kk2 = kappa * p.k2;
  p.ctilde1 = 2.0 * kappa * kappa * kappa / (1.0 - kk1 * kk1);
  p.ctilde2 = 2.0 * kappa * kappa * kappa / (1.0 - kk2 * kk2);
  p.exp_neg_psi1 = (1.0 - kk1) / (1.0 + kk1);
  p.exp_neg_psi2 = (1.0 - kk2) / (1.0 + kk2);
  p.psi1 = -std::log(p.exp_neg_psi1);
  p.psi2 = -std::log(p.exp_neg_psi2);
  if (p.k1 - p.k2 < 1e-12 * (p.k1 + p.k2)) throw DegenerateSpeeds();
  p.two_h = 2.0 * std::log((p.k1 - p.k2) / (p.k1 + p.k2));
  return p;
}

OneSolitonConstants one_soliton_constants(double c, double kappa) {
  check_speed(c, kappa);
  const double k2 = kappa * kappa;
  OneSolitonConstants s;
  s.A = kappa * (c - k2);
  s.E = (c - k2) * (c + 3.0 * k2);
  const double kk = kappa * wavenumber_from_speed(c, kappa);
  s.xi0 = 0.5 * std::log((1.0 + kk) / (1.0 - kk));
  s.phi0 = 4.0 * kappa * (std::sqrt(2.0 * (c - k2)) - 2.0 * kappa) / (c - k2);
  return s;
}

double one_soliton_u_crest(double c, double kappa) {
  const auto s = one_soliton_constants(c, kappa);
  return kappa + (c - kappa * kappa) * s.phi0 / (4.0 * kappa);
}

double one_soliton_m_crest(double c, double kappa) {
  const auto s = one_soliton_constants(c, kappa);
  const double phi_max = one_soliton_u_crest(c, kappa);
  const double rad = s.E - 4.0 * s.A * phi_max;
  return s.A / std::sqrt(rad);
}

PhaseShift collision_phase_shift(const SolitonParams& p) {
  if (p.k1 - p.k2 < 1e-12 * (p.k1 + p.k2)) throw DegenerateSpeeds();
  PhaseShift out;
  out.xi_shift = 2.0 * std::log((p.k1 - p.k2) / (p.k1 + p.k2));

  // Asymptotic one-soliton map of the fast pulse: u over xi and the x-offset
  // relative to c1*t, with optional phase shift delta and offset shift.
  const double kappa = p.kappa;
  const double kk = kappa * p.k1;
  const double root = std::sqrt(1.0 - kk * kk);
  const double xi0 = 0.5 * std::log((1.0 + kk) / (1.0 - kk));
  auto u_of_xi = [&](double xi, double delta) {
    const double ch = std::cosh(xi - xi0 + delta);
    const double den = 1.0 + root * ch;
    return kappa + p.k1 * p.k1 * p.ctilde1 * root * (ch + root) / (den * den);
  };
  auto x_of_xi = [&](double xi, double delta, double offset) {
    return xi / kk +
           2.0 * std::log((1.0 - kk * std::tanh(0.5 * (xi + delta))) / (1.0 + kk)) +
           offset;
  };
  auto crest_x = [&](double delta, double offset) {
    const double lo = xi0 - delta - 5.0, hi = xi0 - delta + 5.0;
    const double xi_star =
        golden_max([&](double xi) { return u_of_xi(xi, delta); }, lo, hi, 1e-12);
    return x_of_xi(xi_star, delta, offset);
  };
  const double x_pre = crest_x(0.0, 0.0);
  const double x_post = crest_x(out.xi_shift, -2.0 * p.psi2);
  out.x_shift_prediction = x_post - x_pre;
  return out;
}

}  // namespace mch
