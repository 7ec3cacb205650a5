#include "mch/grid_field.hpp"

#include <algorithm>
#include <cmath>

#include "mch/errors.hpp"
#include "mch/fft.hpp"
#include "mch/parallel.hpp"

namespace mch {

namespace {

// Cubic Hermite basis on [0,1].
inline double hermite(double f0, double f1, double s0, double s1, double dx,
                      double t) {
  const double t2 = t * t, t3 = t2 * t;
  return f0 * (2.0 * t3 - 3.0 * t2 + 1.0) + s0 * dx * (t3 - 2.0 * t2 + t) +
         f1 * (-2.0 * t3 + 3.0 * t2) + s1 * dx * (t3 - t2);
}

// Fritsch-Carlson slope limiting for a monotone data segment.
inline void limit_monotone(double f0, double f1, double& s0, double& s1,
                           double dx) {
  const double secant = (f1 - f0) / dx;
  if (secant == 0.0) {
    s0 = s1 = 0.0;
    return;
  }
  const double a = s0 / secant, b = s1 / secant;
  const double r = a * a + b * b;
  if (r > 9.0) {
    const double scale = 3.0 / std::sqrt(r);
    s0 *= scale;
    s1 *= scale;
  }
}

}  // namespace

std::vector<double> GridField::xs() const {
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j)
    x[j] = x0 + h * static_cast<double>(j);
  return x;
}

double GridField::min_m() const {
  double v = m.empty() ? 0.0 : m[0];
  for (double q : m) v = std::min(v, q);
  return v;
}

GridField resample(const ParametricCurve& curve, double x0, double h,
                   std::size_t n, const ResampleOptions& opts) {
  const std::size_t nc = curve.size();
  if (nc < 4) throw ValidationError("curve too short to resample");
  const double x_last = x0 + h * static_cast<double>(n - 1);
  if (x0 < curve.x.front() || x_last > curve.x.back())
    throw RangeExceeded("requested x-range not covered by the curve");

  // Transported derivatives (m d/dy)^k m on the curve knots, each with its
  // own y-slope for Hermite interpolation.
  const int K = opts.deriv_order;
  std::array<std::vector<double>, 4> xk, xk_slope;
  for (int k = 0; k < K; ++k) {
    xk[k].resize(nc);
    xk_slope[k].resize(nc);
  }
  if (K > 0) {
    parallel_for(static_cast<std::ptrdiff_t>(nc), [&](std::ptrdiff_t i) {
      double mj[6] = {curve.m[i], curve.m_y[0][i], curve.m_y[1][i],
                      curve.m_y[2][i], curve.m_y[3][i], curve.m_y[4][i]};
      double x1[5], x2[4], x3[3], x4[2];
      product_jet(mj, mj + 1, x1, 4);
      product_jet(mj, x1 + 1, x2, 3);
      product_jet(mj, x2 + 1, x3, 2);
      product_jet(mj, x3 + 1, x4, 1);
      const double* jets[4] = {x1, x2, x3, x4};
      for (int k = 0; k < K; ++k) {
        xk[k][i] = jets[k][0];
        xk_slope[k][i] = jets[k][1];
      }
    });
  }

  GridField out;
  out.x0 = x0;
  out.h = h;
  out.n = n;
  out.kappa = curve.kappa;
  out.periodic = opts.periodic;
  out.m.resize(n);
  for (int k = 0; k < K; ++k) out.dm[k].resize(n);

  parallel_for(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t j) {
    const double xq = x0 + h * static_cast<double>(j);
    auto it = std::upper_bound(curve.x.begin(), curve.x.end(), xq);
    std::size_t i = static_cast<std::size_t>(it - curve.x.begin());
    if (i == 0) i = 1;
    if (i >= nc) i = nc - 1;
    const std::size_t i0 = i - 1;
    const double dx = curve.x[i] - curve.x[i0];
    const double t = (xq - curve.x[i0]) / dx;

    // invert x(y): slopes dy/dx = m
    double s0 = curve.m[i0], s1 = curve.m[i];
    limit_monotone(curve.y[i0], curve.y[i], s0, s1, dx);
    const double yq = hermite(curve.y[i0], curve.y[i], s0, s1, dx, t);

    const double dy = curve.y[i] - curve.y[i0];
    const double ty = (yq - curve.y[i0]) / dy;
    out.m[j] = hermite(curve.m[i0], curve.m[i], curve.m_y[0][i0],
                       curve.m_y[0][i], dy, ty);
    for (int k = 0; k < K; ++k)
      out.dm[k][j] = hermite(xk[k][i0], xk[k][i], xk_slope[k][i0],
                             xk_slope[k][i], dy, ty);
  });
  return out;
}

std::vector<double> helmholtz_velocity(const GridField& field) {
  if (!fft::is_pow2(field.n))
    throw ValidationError("helmholtz_velocity needs a power-of-two grid");
  return fft::helmholtz_inverse(field.m, field.period());
}

double sobolev_norm(std::span<const double> d, double h, int s,
                    bool periodic) {
  const std::size_t n = d.size();
  if (periodic) {
    const double period = h * static_cast<double>(n);
    const auto modes = fft::spectrum(d);
    const auto xi = fft::wavenumbers(n, period);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double w = 1.0 + xi[k] * xi[k];
      if (s == 2) w += xi[k] * xi[k] * xi[k] * xi[k];
      acc += w * std::norm(modes[k]);
    }
    return std::sqrt(acc * period / (static_cast<double>(n) * n));
  }
  // line: centered differences, zero extension past the (decayed) ends
  auto at = [&](std::ptrdiff_t i) -> double {
    return (i < 0 || i >= static_cast<std::ptrdiff_t>(n)) ? 0.0 : d[i];
  };
  double acc = 0.0;
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const double v = at(i);
    const double v1 = (at(i + 1) - at(i - 1)) / (2.0 * h);
    double term = v * v + v1 * v1;
    if (s == 2) {
      const double v2 = (at(i + 1) - 2.0 * v + at(i - 1)) / (h * h);
      term += v2 * v2;
    }
    acc += term;
  }
  return std::sqrt(acc * h);
}

double sobolev_distance(const GridField& a, const GridField& b, int s) {
  if (!a.same_grid(b)) throw GridMismatch();
  std::vector<double> d(a.n);
  for (std::size_t i = 0; i < a.n; ++i) d[i] = a.m[i] - b.m[i];
  return sobolev_norm(d, a.h, s, a.periodic);
}

double x_derivative_check(const ParametricCurve& curve, double c) {
  const auto cs = one_soliton_constants(c, curve.kappa);
  double worst = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double m = curve.m[i];
    const double m_x = m * curve.m_y[0][i];
    const double phi_x = curve.u_y[i] * m;
    const double rhs = 2.0 / cs.A * phi_x * m * m * m;
    worst = std::max(worst, std::abs(m_x - rhs));
  }
  return worst;
}

}  // namespace mch
