#include "mch/curve.hpp"

#include <cmath>

#include "mch/errors.hpp"
#include "mch/parallel.hpp"

namespace mch {

namespace {

// log(g/f) and log(fg) jets in (xi1, xi2), combined from the two tau sums.
struct PointJets {
  LogJet ratio;  // log(g/f)
  LogJet prod;   // log(fg)
};

PointJets point_jets(const TauSystem& sys, double tau, double y) {
  const double x1 = sys.xi1(y, tau);
  const double x2 = sys.xi2(y, tau);
  const LogJet jf = sys.f.log_jet(x1, x2);
  const LogJet jg = sys.g.log_jet(x1, x2);
  PointJets out;
  for (int i = 0; i <= LogJet::kMaxOrder; ++i)
    for (int j = 0; i + j <= LogJet::kMaxOrder; ++j) {
      out.ratio.c[i][j] = jg.c[i][j] - jf.c[i][j];
      out.prod.c[i][j] = jg.c[i][j] + jf.c[i][j];
    }
  return out;
}

}  // namespace

CurvePoint curve_point(const TauSystem& sys, double tau, double y) {
  const PointJets jets = point_jets(sys, tau, y);
  const double kappa = sys.kappa;

  // p = 1/kappa + 2 (log(g/f))_y, with y-derivatives up to order 5
  double pjet[6];
  pjet[0] = 1.0 / kappa + 2.0 * yt_deriv(jets.ratio, sys, 1, 0);
  for (int j = 1; j <= 5; ++j)
    pjet[j] = 2.0 * yt_deriv(jets.ratio, sys, j + 1, 0);

  CurvePoint pt;
  reciprocal_jet(pjet, pt.m_jet, 5);
  if (!(pt.m_jet[0] > 0.0)) throw NonMonotoneMap();
  pt.u = kappa - yt_deriv(jets.prod, sys, 1, 1);
  pt.u_y = -yt_deriv(jets.prod, sys, 2, 1);
  pt.x = y / kappa + kappa * kappa * tau + 2.0 * jets.ratio.c[0][0] + sys.d;
  return pt;
}

void curve_point_values(const TauSystem& sys, double tau, double y, double& x,
                        double& m) {
  const double x1 = sys.xi1(y, tau);
  const double x2 = sys.xi2(y, tau);
  double vf, f1, f2, vg, g1, g2;
  sys.f.log_grad(x1, x2, vf, f1, f2);
  sys.g.log_grad(x1, x2, vg, g1, g2);
  const double ratio_y = sys.k1 * (g1 - f1) + sys.k2 * (g2 - f2);
  const double p = 1.0 / sys.kappa + 2.0 * ratio_y;
  if (!(p > 0.0)) throw NonMonotoneMap();
  m = 1.0 / p;
  x = y / sys.kappa + sys.kappa * sys.kappa * tau + 2.0 * (vg - vf) + sys.d;
}

void curve_point_values2(const TauSystem& sys, double tau, double y, double& x,
                         double& m, double& m_y) {
  const double x1 = sys.xi1(y, tau);
  const double x2 = sys.xi2(y, tau);
  double jf[6], jg[6];
  sys.f.log_grad2(x1, x2, jf);
  sys.g.log_grad2(x1, x2, jg);
  const double ratio_y =
      sys.k1 * (jg[1] - jf[1]) + sys.k2 * (jg[2] - jf[2]);
  const double ratio_yy = sys.k1 * sys.k1 * (jg[3] - jf[3]) +
                          2.0 * sys.k1 * sys.k2 * (jg[4] - jf[4]) +
                          sys.k2 * sys.k2 * (jg[5] - jf[5]);
  const double p = 1.0 / sys.kappa + 2.0 * ratio_y;
  if (!(p > 0.0)) throw NonMonotoneMap();
  const double p_y = 2.0 * ratio_yy;
  m = 1.0 / p;
  m_y = -p_y * m * m;
  x = y / sys.kappa + sys.kappa * sys.kappa * tau + 2.0 * (jg[0] - jf[0]) +
      sys.d;
}

ParametricCurve eval_curve(const TauSystem& sys, double tau,
                           std::span<const double> y_grid) {
  const std::size_t n = y_grid.size();
  ParametricCurve c;
  c.tau = tau;
  c.kappa = sys.kappa;
  c.y.assign(y_grid.begin(), y_grid.end());
  c.x.resize(n);
  c.u.resize(n);
  c.m.resize(n);
  c.u_y.resize(n);
  for (auto& v : c.m_y) v.resize(n);

  parallel_for(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t i) {
    const CurvePoint pt = curve_point(sys, tau, y_grid[i]);
    c.x[i] = pt.x;
    c.u[i] = pt.u;
    c.m[i] = pt.m_jet[0];
    c.u_y[i] = pt.u_y;
    for (int j = 0; j < 5; ++j) c.m_y[j][i] = pt.m_jet[j + 1];
  });

  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(c.x[i] < c.x[i + 1])) throw NonMonotoneMap();
  return c;
}

ParametricCurve eval_curve(const SolitonParams& p, double tau,
                           std::span<const double> y_grid) {
  return eval_curve(two_soliton_system(p), tau, y_grid);
}

std::vector<double> uniform_grid(double center, double half_width,
                                 std::size_t n) {
  std::vector<double> y(n);
  const double h = 2.0 * half_width / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    y[i] = center - half_width + h * static_cast<double>(i);
  return y;
}

std::vector<double> default_y_grid(const SolitonParams& p, double tau,
                                   std::size_t n) {
  return uniform_grid(soliton_center_y(p, tau, 2), 60.0 / p.k2, n);
}

std::vector<double> y_grid_covering_x(const TauSystem& sys, double tau,
                                      double x_lo, double x_hi,
                                      std::size_t n) {
  double min_lc = 0.0;
  for (const auto& t : sys.g.terms()) min_lc = std::min(min_lc, t.log_coeff);
  const double kap = sys.kappa;
  const double y_lo = kap * (x_lo - kap * kap * tau - sys.d) - 1.0;
  const double y_hi =
      kap * (x_hi - kap * kap * tau - sys.d) - 2.0 * kap * min_lc + 1.0;
  const double center = 0.5 * (y_lo + y_hi);
  return uniform_grid(center, 0.5 * (y_hi - y_lo), n);
}

ParametricCurve one_soliton_curve(double c, double kappa,
                                  std::span<const double> y_grid, double y0) {
  return eval_curve(one_soliton_system(c, kappa, y0), 0.0, y_grid);
}

HomoclinicSample homoclinic_oracle(double phi, double phi_x, double c,
                                   double kappa) {
  const auto s = one_soliton_constants(c, kappa);
  const double rad = s.E - 4.0 * s.A * phi;
  if (!(rad > 0.0)) throw SqrtDomain();
  HomoclinicSample out;
  out.residual = phi * phi - phi_x * phi_x - c + std::sqrt(rad);
  out.mu = s.A / std::sqrt(rad);
  return out;
}

Crest find_crest(const TauSystem& sys, double tau, double y_lo, double y_hi,
                 double tol) {
  auto u_at = [&](double y) { return curve_point(sys, tau, y).u; };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = y_lo, b = y_hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = u_at(x1), f2 = u_at(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = u_at(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = u_at(x1);
    }
  }
  const double y_star = 0.5 * (a + b);
  const CurvePoint pt = curve_point(sys, tau, y_star);
  return Crest{y_star, pt.x, pt.u, pt.m_jet[0]};
}

double soliton_center_y(const SolitonParams& p, double tau, int which) {
  if (which == 1) return p.ctilde1 * tau - p.y10;
  return p.ctilde2 * tau - p.y20;
}

double m_at_x(const TauSystem& sys, double tau, double x) {
  // x(y) is strictly increasing with slope p in [1/m_max, 1/kappa + ...];
  // Newton from the asymptotic linear map converges in a handful of steps.
  double y = sys.kappa * (x - sys.kappa * sys.kappa * tau - sys.d);
  for (int it = 0; it < 80; ++it) {
    double xv, mv;
    curve_point_values(sys, tau, y, xv, mv);
    const double step = (xv - x) * mv;  // dy = m dx
    y -= step;
    if (std::abs(step) < 1e-14 * (1.0 + std::abs(y))) break;
  }
  double xv, mv;
  curve_point_values(sys, tau, y, xv, mv);
  return mv;
}

double assoc_mch_residual(const TauSystem& sys, double tau, double y) {
  const PointJets jets = point_jets(sys, tau, y);
  const double p = 1.0 / sys.kappa + 2.0 * yt_deriv(jets.ratio, sys, 1, 0);
  const double p_y = 2.0 * yt_deriv(jets.ratio, sys, 2, 0);
  const double p_t = 2.0 * yt_deriv(jets.ratio, sys, 1, 1);
  const double p_ty = 2.0 * yt_deriv(jets.ratio, sys, 2, 1);
  const double p_tyy = 2.0 * yt_deriv(jets.ratio, sys, 3, 1);
  return p * p_tyy - p_y * p_ty - p * p * p * p_t - 2.0 * p_y;
}

}  // namespace mch
