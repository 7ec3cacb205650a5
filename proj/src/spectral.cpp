#include "mch/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "mch/curve.hpp"
#include "mch/errors.hpp"
#include "mch/parallel.hpp"

namespace mch {

double BandedSymmetric::at(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  const std::size_t k = j - i;
  if (k > 2) return 0.0;
  return diag[k][i];
}

void BandedSymmetric::apply(std::span<const double> v,
                            std::span<double> out) const {
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[0][i] * v[i];
    for (std::size_t k = 1; k <= 2; ++k) {
      if (i + k < n) s += diag[k][i] * v[i + k];
      if (i >= k) s += diag[k][i - k] * v[i - k];
    }
    out[i] = s;
  }
}

SelfAdjointOperator assemble_L(const GridField& mu, const LagrangePair& l) {
  if (!(mu.min_m() > 0.0)) throw PositivityViolated();
  if (!mu.has_derivs(4))
    throw ValidationError("assemble_L needs derivatives up to order 4");
  const std::size_t n = mu.n;
  if (n < 8) throw ValidationError("grid too small for the operator");
  const double h = mu.h;
  const double l1 = l.lambda1, l2 = l.lambda2;

  // Pointwise coefficients of the quadratic form
  //   Q(v) = sum a (D2 v)^2 - sum w (D1 v)^2 + sum b v^2.
  std::vector<double> a(n), w(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = mu.m[i];
    const double m1 = mu.dm[0][i], m2 = mu.dm[1][i];
    const double m3 = mu.dm[2][i], m4 = mu.dm[3][i];
    const double im = 1.0 / m;
    const double im2 = im * im;
    const double im5 = im2 * im2 * im, im6 = im5 * im, im7 = im6 * im;
    const double im8 = im7 * im, im9 = im8 * im;

    a[i] = im7;
    w[i] = 42.0 * im9 * m1 * m1 - 14.0 * im8 * m2 - 2.5 * im7 - 2.0 * l2 * im5;

    // zeroth-order potential q(mu); derivative terms expanded by the
    // product rule so only the pointwise jets enter
    const double pow7_xx = 56.0 * im9 * m1 * m1 - 7.0 * im8 * m2;
    const double pow5_xx = 30.0 * im7 * m1 * m1 - 5.0 * im6 * m2;
    const double mu10_mx3_x =
        -10.0 * im9 * im2 * m1 * m1 * m1 * m1 + 3.0 * im9 * im * m1 * m1 * m2;
    const double mu8_mxx_xx = 72.0 * im9 * im * m1 * m1 * m2 -
                              8.0 * im9 * m2 * m2 - 16.0 * im9 * m1 * m3 +
                              im8 * m4;
    const double q = 28.0 * im9 * m2 * m2 + 70.0 * im9 * m1 * m1 -
                     2.5 * pow7_xx - 315.0 * im9 * im2 * m1 * m1 * m1 * m1 -
                     126.0 * mu10_mx3_x - 7.0 * mu8_mxx_xx +
                     30.0 * l2 * im7 * m1 * m1 - 2.0 * l2 * pow5_xx;

    b[i] = 1.875 * im7 + 2.0 * l1 * im2 * im + 3.0 * l2 * im5 + q;
  }

  SelfAdjointOperator op;
  op.x0 = mu.x0;
  op.h = h;
  op.grid_n = n;
  op.lambdas = l;
  for (double v : b) op.max_abs_b = std::max(op.max_abs_b, std::abs(v));
  op.b_background = 0.5 * (b.front() + b.back());

  // Unknowns are the interior points 1..n-2 (Dirichlet: v = 0 at both ends).
  const std::size_t ni = n - 2;
  op.mat.n = ni;
  for (auto& dvec : op.mat.diag) dvec.assign(ni, 0.0);
  auto add = [&](std::ptrdiff_t gi, std::ptrdiff_t gj, double val) {
    // global grid indices -> interior indices; boundary entries are dropped
    const std::ptrdiff_t i = gi - 1, j = gj - 1;
    if (i < 0 || j < 0 || i >= static_cast<std::ptrdiff_t>(ni) ||
        j >= static_cast<std::ptrdiff_t>(ni))
      return;
    if (i > j) return;  // store upper triangle once
    op.mat.diag[j - i][i] += val;
  };

  const double ih2 = 1.0 / (h * h);
  const double ih4 = ih2 * ih2;
  for (std::size_t e = 1; e + 1 < n; ++e) {
    const auto ge = static_cast<std::ptrdiff_t>(e);
    // a_e * ((v_{e-1} - 2 v_e + v_{e+1}) / h^2)^2
    const double ca = a[e] * ih4;
    const std::ptrdiff_t idx2[3] = {ge - 1, ge, ge + 1};
    const double st2[3] = {1.0, -2.0, 1.0};
    for (int r = 0; r < 3; ++r)
      for (int c = r; c < 3; ++c) add(idx2[r], idx2[c], ca * st2[r] * st2[c]);
    // -w_e * ((v_{e+1} - v_{e-1}) / 2h)^2
    const double cw = -w[e] * 0.25 * ih2;
    add(ge - 1, ge - 1, cw);
    add(ge + 1, ge + 1, cw);
    add(ge - 1, ge + 1, -cw);
    // b_e * v_e^2
    add(ge, ge, b[e]);
  }
  return op;
}

SpectralWindow spectral_window(const SolitonParams& p, double t,
                               std::size_t n, double half_width) {
  const TauSystem sys = two_soliton_system(p);
  double x1, x2, mv;
  curve_point_values(sys, t, soliton_center_y(p, t, 1), x1, mv);
  curve_point_values(sys, t, soliton_center_y(p, t, 2), x2, mv);
  SpectralWindow win;
  win.center = 0.5 * (x1 + x2);
  win.half_width = half_width > 0.0
                       ? half_width
                       : 0.5 * std::abs(x1 - x2) + 31.0 / (p.kappa * p.k2);
  win.x0 = win.center - win.half_width;
  win.h = 2.0 * win.half_width / static_cast<double>(n);
  return win;
}

GridField spectral_mu_field(const SolitonParams& p, double t, std::size_t n,
                            double half_width) {
  const SpectralWindow win = spectral_window(p, t, n, half_width);
  const TauSystem sys = two_soliton_system(p);
  const double x_hi = win.x0 + win.h * static_cast<double>(n - 1);
  const auto curve =
      eval_curve(sys, t, y_grid_covering_x(sys, t, win.x0, x_hi, 4 * n));
  ResampleOptions opts;
  return resample(curve, win.x0, win.h, n, opts);
}

double essential_edge(double c1, double c2, double kappa) {
  const double k2 = kappa * kappa;
  auto check = [&](double c) {
    if (!(kappa > 0.0) || !(c > 3.0 * k2) || !(c < 9.0 * k2))
      throw SpeedOutOfWindow(c, kappa);
  };
  check(c1);
  check(c2);
  return (c1 - 3.0 * k2) * (c2 - 3.0 * k2) /
         (std::pow(kappa, 7) * (c1 - k2) * (c2 - k2));
}

int inertia_below(const BandedSymmetric& mat, double sigma) {
  // LDL^T of (A - sigma I) without pivoting; a vanishing pivot is nudged,
  // which at worst moves the count boundary by one ULP-scale shift.
  const std::size_t n = mat.n;
  std::vector<double> d(n), e1(n, 0.0), e2(n, 0.0);
  int count = 0;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    scale = std::max(scale, std::abs(mat.diag[0][i]));
  const double tiny = scale * 1e-300 + 1e-300;
  for (std::size_t i = 0; i < n; ++i) {
    double di = mat.diag[0][i] - sigma;
    double l1 = 0.0, l2 = 0.0;
    if (i >= 1) {
      const double u = e1[i - 1];  // A(i-1, i) updated
      l1 = u / d[i - 1];
      di -= l1 * u;
    }
    if (i >= 2) {
      const double u = e2[i - 2];
      l2 = u / d[i - 2];
      di -= l2 * u;
    }
    if (di == 0.0) di = tiny;
    d[i] = di;
    if (di < 0.0) ++count;
    if (i + 1 < n) {
      double u = mat.diag[1][i];
      if (i >= 1) u -= l1 * e2[i - 1];
      e1[i] = u;
    }
    if (i + 2 < n) e2[i] = mat.diag[2][i];
  }
  return count;
}

namespace {

// k-th smallest eigenvalue (1-based) via bisection on the inertia count.
double kth_eigenvalue(const BandedSymmetric& mat, int k, double lo,
                      double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (inertia_below(mat, mid) >= k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

SpectrumReport bottom_spectrum(const SelfAdjointOperator& op, int count,
                               double essential_edge_hint) {
  const BandedSymmetric& A = op.mat;
  const std::size_t n = A.n;
  if (n == 0 || count < 1) throw EigensolverFailure("empty operator");

  // Gershgorin enclosure of the whole spectrum
  double lo = 1e300, hi = -1e300;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    for (std::size_t k = 1; k <= 2; ++k) {
      if (i + k < n) r += std::abs(A.diag[k][i]);
      if (i >= k) r += std::abs(A.diag[k][i - k]);
    }
    lo = std::min(lo, A.diag[0][i] - r);
    hi = std::max(hi, A.diag[0][i] + r);
  }

  SpectrumReport rep;
  rep.x0 = op.x0;
  rep.h = op.h;
  rep.n = op.grid_n;
  // Discrete images of the exact kernel have Rayleigh quotients O(h^2); the
  // constant 6 keeps the window clear of the soliton-bound eigenvalue near
  // +5e-3 that sits below the essential edge (measured margins >= 1.5x over
  // n in {2048, 4096} and t in {-20, 0, 20} on the standard window).
  rep.tol = 6.0 * op.max_abs_b * op.h * op.h;
  rep.essential_edge =
      essential_edge_hint > 0.0 ? essential_edge_hint : op.b_background;

  rep.lowest.resize(count);
  for (int k = 1; k <= count; ++k)
    rep.lowest[k - 1] = kth_eigenvalue(A, k, lo, hi);
  for (int k = 1; k < count; ++k)
    if (rep.lowest[k] < rep.lowest[k - 1])
      throw EigensolverFailure("bisection produced unordered eigenvalues");

  rep.n_negative = inertia_below(A, -rep.tol);
  rep.n_kernel = inertia_below(A, rep.tol) - rep.n_negative;
  return rep;
}

KernelPair kernel_directions(const SolitonParams& p, double t, double x0,
                             double h, std::size_t n, double eps) {
  KernelPair out;
  out.x0 = x0;
  out.h = h;

  // Exact Newton inversion per grid point: interpolation error through the
  // fourth-difference stencil would otherwise floor the L[mu_j] residuals.
  auto sample = [&](double dy10, double dy20) {
    SolitonParams q = build_params(p.kappa, p.c1, p.c2, p.y10 + dy10,
                                   p.y20 + dy20, p.d);
    const TauSystem sys = two_soliton_system(q);
    std::vector<double> m(n);
    parallel_for(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t j) {
      m[j] = m_at_x(sys, t, x0 + h * static_cast<double>(j));
    });
    return m;
  };

  // Richardson-extrapolated central difference at fixed x.
  auto direction = [&](int which) {
    const double s = eps;
    auto shift = [&](double delta) {
      return which == 1 ? sample(delta, 0.0) : sample(0.0, delta);
    };
    const auto fp = shift(s), fm = shift(-s);
    const auto gp = shift(0.5 * s), gm = shift(-0.5 * s);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double coarse = (fp[i] - fm[i]) / (2.0 * s);
      const double fine = (gp[i] - gm[i]) / s;
      d[i] = (4.0 * fine - coarse) / 3.0;
    }
    return d;
  };
  out.mu1 = direction(1);
  out.mu2 = direction(2);

  auto norm2 = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (double q : v) s += q * q;
    return s;
  };
  const double n1 = norm2(out.mu1), n2 = norm2(out.mu2);
  double dot = 0.0;
  for (std::size_t i = 0; i < n; ++i) dot += out.mu1[i] * out.mu2[i];
  out.gram_det = n1 * n2 > 0.0 ? 1.0 - dot * dot / (n1 * n2) : 0.0;
  return out;
}

int wronskian_sign_changes(std::span<const double> mu1,
                           std::span<const double> mu2, double h) {
  const std::size_t n = mu1.size();
  // degenerate-pair guard: normalized Gram determinant
  double n1 = 0.0, n2 = 0.0, dot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    n1 += mu1[i] * mu1[i];
    n2 += mu2[i] * mu2[i];
    dot += mu1[i] * mu2[i];
  }
  if (!(n1 > 0.0) || !(n2 > 0.0) || 1.0 - dot * dot / (n1 * n2) < 1e-10)
    throw DegenerateInput();

  // 4th-order centered first derivatives
  auto deriv = [&](std::span<const double> v) {
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 2; i + 2 < n; ++i)
      d[i] = (-v[i + 2] + 8.0 * v[i + 1] - 8.0 * v[i - 1] + v[i - 2]) /
             (12.0 * h);
    return d;
  };
  const auto d1 = deriv(mu1), d2 = deriv(mu2);
  std::vector<double> wr(n, 0.0);
  // Roundoff lives in the products, not in their difference: when the modes
  // localize on different solitons, max|Wr| collapses exponentially in the
  // separation while the term magnitudes stay O(1).
  double s1 = 0.0, s2 = 0.0, sd1 = 0.0, sd2 = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    wr[i] = mu1[i] * d2[i] - mu2[i] * d1[i];
    s1 = std::max(s1, std::abs(mu1[i]));
    s2 = std::max(s2, std::abs(mu2[i]));
    sd1 = std::max(sd1, std::abs(d1[i]));
    sd2 = std::max(sd2, std::abs(d2[i]));
  }
  const double scale = s1 * sd2 + s2 * sd1;
  const double floor = 1e3 * 2.220446049250313e-16 * scale;
  int count = 0;
  int last_sign = 0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    if (std::abs(wr[i]) <= floor) continue;
    const int s = wr[i] > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) ++count;
    last_sign = s;
  }
  return count;
}

int wronskian_sign_changes_y(const SolitonParams& p, double tau,
                             std::span<const double> y_grid) {
  const TauSystem sys = two_soliton_system(p);
  const std::size_t n = y_grid.size();
  std::vector<double> wr(n), terms(n);
  parallel_for(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t i) {
    const double y = y_grid[i];
    const LogJet jf = sys.f.log_jet(sys.xi1(y, tau), sys.xi2(y, tau));
    const LogJet jg = sys.g.log_jet(sys.xi1(y, tau), sys.xi2(y, tau));
    LogJet r{};
    for (int a = 0; a <= LogJet::kMaxOrder; ++a)
      for (int b = 0; a + b <= LogJet::kMaxOrder; ++b)
        r.c[a][b] = jg.c[a][b] - jf.c[a][b];
    // d/dy of xi-partials: (log(g/f))_{y xi_i} and (log(g/f))_{y xi_i y}
    auto dy = [&](int a, int b) {
      return sys.k1 * r.c[a + 1][b] + sys.k2 * r.c[a][b + 1];
    };
    auto dyy = [&](int a, int b) {
      return sys.k1 * sys.k1 * r.c[a + 2][b] +
             2.0 * sys.k1 * sys.k2 * r.c[a + 1][b + 1] +
             sys.k2 * sys.k2 * r.c[a][b + 2];
    };
    const double f_y1 = dy(1, 0), f_y1y = dyy(1, 0);
    const double f_y2 = dy(0, 1), f_y2y = dyy(0, 1);
    wr[i] = f_y1 * f_y2y - f_y2 * f_y1y;
    terms[i] = std::abs(f_y1 * f_y2y) + std::abs(f_y2 * f_y1y);
  });
  double scale = 0.0;
  for (double v : terms) scale = std::max(scale, v);
  const double floor = 1e3 * 2.220446049250313e-16 * scale;
  int count = 0, last_sign = 0;
  for (double v : wr) {
    if (std::abs(v) <= floor) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) ++count;
    last_sign = s;
  }
  return count;
}

}  // namespace mch
