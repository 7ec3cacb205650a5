#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "mch/curve.hpp"

namespace mch {

// Uniform-x momentum samples with background kappa. Line fields cover
// [x0, x0+(n-1)h]; periodic fields represent one period of length n*h.
// dm holds x-derivatives m_x..m_xxxx when the field was resampled with
// derivative transport; otherwise the arrays are empty.
struct GridField {
  double x0 = 0.0;
  double h = 0.0;
  std::size_t n = 0;
  double kappa = 1.0;
  bool periodic = false;
  std::vector<double> m;
  std::array<std::vector<double>, 4> dm;

  double period() const { return h * static_cast<double>(n); }
  bool has_derivs(int order) const {
    for (int j = 0; j < order; ++j)
      if (dm[j].size() != n) return false;
    return true;
  }
  std::vector<double> xs() const;
  double min_m() const;
  bool same_grid(const GridField& o) const {
    return n == o.n && periodic == o.periodic && x0 == o.x0 && h == o.h;
  }
};

struct ResampleOptions {
  int deriv_order = 4;  // 0..4 transported x-derivatives
  bool periodic = false;
};

// Monotone cubic Hermite inversion of the x(y) map followed by Hermite
// interpolation of m and of the transported derivatives (d/dx = m d/dy
// applied 1..4 times to the analytic y-jets). Throws RangeExceeded when the
// requested x-range is not covered by the curve.
GridField resample(const ParametricCurve& curve, double x0, double h,
                   std::size_t n, const ResampleOptions& opts = {});

// u = (1 - d^2/dx^2)^{-1} m on the periodic extension. n must be a power
// of two.
std::vector<double> helmholtz_velocity(const GridField& field);

// Discrete H^s norm of a raw sample vector (s = 1 or 2); spectral symbol on
// periodic grids, centered differences on line grids.
double sobolev_norm(std::span<const double> d, double h, int s, bool periodic);

double sobolev_distance(const GridField& a, const GridField& b, int s);

// One-soliton identity m_x = 2*A^{-1}*phi_x*m^3: max residual over the curve,
// both sides from analytic derivatives.
double x_derivative_check(const ParametricCurve& curve, double c);

}  // namespace mch
