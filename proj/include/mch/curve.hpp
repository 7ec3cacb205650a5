#pragma once

#include <array>
#include <span>
#include <vector>

#include "mch/expsum.hpp"
#include "mch/params.hpp"

namespace mch {

// Samples of the parametric representation at fixed tau. y is strictly
// increasing, x(y) strictly increasing, m > 0 everywhere. m_y holds the
// analytic y-derivatives of m up to order 5 (order 5 feeds the Hermite
// slopes of the transported x-derivatives during resampling).
struct ParametricCurve {
  double tau = 0.0;
  double kappa = 1.0;
  std::vector<double> y, x, u, m, u_y;
  std::array<std::vector<double>, 5> m_y;  // m_y[j-1] = d^j m / dy^j

  std::size_t size() const { return y.size(); }
};

// Pointwise evaluation of the tau-function representation.
struct CurvePoint {
  double x, u, m, u_y;
  double m_jet[6];  // m and y-derivatives up to order 5
};
CurvePoint curve_point(const TauSystem& sys, double tau, double y);

// Fast path: x and m only.
void curve_point_values(const TauSystem& sys, double tau, double y, double& x,
                        double& m);

// Fast path with the first y-derivative of m (enough for cubic Hermite
// resampling of values).
void curve_point_values2(const TauSystem& sys, double tau, double y, double& x,
                         double& m, double& m_y);

ParametricCurve eval_curve(const TauSystem& sys, double tau,
                           std::span<const double> y_grid);
ParametricCurve eval_curve(const SolitonParams& p, double tau,
                           std::span<const double> y_grid);

std::vector<double> uniform_grid(double center, double half_width,
                                 std::size_t n);

// Default y-grid: half-width 60/k2 around the slow soliton's center.
std::vector<double> default_y_grid(const SolitonParams& p, double tau,
                                   std::size_t n = 8192);

// Uniform y-grid guaranteed to cover [x_lo, x_hi] under the x(y) map
// (2*ln(g/f) is bounded between -2*(psi1+psi2) and 0).
std::vector<double> y_grid_covering_x(const TauSystem& sys, double tau,
                                      double x_lo, double x_hi, std::size_t n);

ParametricCurve one_soliton_curve(double c, double kappa,
                                  std::span<const double> y_grid,
                                  double y0 = 0.0);

// First-integral residual and momentum value of the homoclinic orbit at a
// phase-plane point (phi, phi_x). Throws SqrtDomain when E - 4*A*phi <= 0.
struct HomoclinicSample {
  double residual;  // phi^2 - phi_x^2 - c + sqrt(E - 4*A*phi)
  double mu;        // A / sqrt(E - 4*A*phi)
};
HomoclinicSample homoclinic_oracle(double phi, double phi_x, double c,
                                   double kappa);

// Crest of u by golden-section search between y_lo and y_hi (tolerance in y).
struct Crest {
  double y, x, u, m;
};
Crest find_crest(const TauSystem& sys, double tau, double y_lo, double y_hi,
                 double tol = 1e-12);

// Predicted y-frame center of soliton i (xi_i = 0) at time tau.
double soliton_center_y(const SolitonParams& p, double tau, int which);

// Exact m at a given x by Newton inversion of the x(y) map. Used as the
// resampling oracle in tests and for reference fields.
double m_at_x(const TauSystem& sys, double tau, double x);

// Residual of the associated mCH equation p*p_tauyy - p_y*p_tauy - p^3*p_tau
// - 2*p_y evaluated with analytic derivatives. Vanishes on exact solutions.
double assoc_mch_residual(const TauSystem& sys, double tau, double y);

}  // namespace mch
