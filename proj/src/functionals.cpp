#include "mch/functionals.hpp"

#include <cmath>

#include "mch/errors.hpp"
#include "mch/fft.hpp"
#include "mch/parallel.hpp"

namespace mch {

namespace {

void check_speed_window(double c, double kappa) {
  const double k2 = kappa * kappa;
  if (!(kappa > 0.0) || !(c > 3.0 * k2) || !(c < 9.0 * k2))
    throw SpeedOutOfWindow(c, kappa);
}

// Composite Simpson over samples [i0, i1] (inclusive) with an even interval
// count; strided access supports the half-resolution Richardson pass.
double simpson_line(std::span<const double> f, std::size_t i0, std::size_t i1,
                    std::size_t stride, double h) {
  std::size_t count = (i1 - i0) / stride;  // intervals at this stride
  if (count % 2 == 1) count -= 1;
  if (count < 2) return 0.0;
  double acc = f[i0] + f[i0 + count * stride];
  for (std::size_t k = 1; k < count; ++k)
    acc += f[i0 + k * stride] * (k % 2 == 1 ? 4.0 : 2.0);
  return acc * h * static_cast<double>(stride) / 3.0;
}

double simpson_periodic(std::span<const double> f, std::size_t stride,
                        double h) {
  const std::size_t n = f.size() / stride;
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    acc += f[k * stride] * (k % 2 == 0 ? 2.0 : 4.0);
  return acc * h * static_cast<double>(stride) / 3.0;
}

struct Quad {
  double value;
  double error;
};

Quad integrate(const GridField& field, std::span<const double> f) {
  if (field.periodic) {
    const double full = simpson_periodic(f, 1, field.h);
    const double half = simpson_periodic(f, 2, field.h);
    return {full, std::abs(full - half) / 15.0};
  }
  // truncate decayed tails
  const double tol = 1e-14;
  std::size_t i0 = 0, i1 = field.n - 1;
  while (i0 < i1 && std::abs(field.m[i0] - field.kappa) < tol) ++i0;
  while (i1 > i0 && std::abs(field.m[i1] - field.kappa) < tol) --i1;
  if (i0 > 0) --i0;
  if (i1 + 1 < field.n) ++i1;
  const double full = simpson_line(f, i0, i1, 1, field.h);
  const double half = simpson_line(f, i0, i1, 2, field.h);
  return {full, std::abs(full - half) / 15.0};
}

}  // namespace

ConservedReport conserved_report(const GridField& field) {
  if (!(field.min_m() > 0.0)) throw PositivityViolated();
  const std::size_t n = field.n;
  const double kap = field.kappa;

  std::vector<double> mx_store, mxx_store;
  std::span<const double> mx, mxx;
  if (field.has_derivs(2)) {
    mx = field.dm[0];
    mxx = field.dm[1];
  } else if (field.periodic) {
    mx_store = fft::derivative(field.m, field.period(), 1);
    mxx_store = fft::derivative(field.m, field.period(), 2);
    mx = mx_store;
    mxx = mxx_store;
  } else {
    throw ValidationError("conserved_report needs m_x, m_xx on line fields");
  }

  std::array<std::vector<double>, 7> integ;
  for (auto& v : integ) v.resize(n);
  parallel_for(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t i) {
    const double m = field.m[i];
    const double m1 = mx[i], m2 = mxx[i];
    const double im = 1.0 / m;
    const double im2 = im * im, im3 = im2 * im, im5 = im3 * im2;
    const double im7 = im5 * im2, im9 = im7 * im2;
    const double ik = 1.0 / kap;
    const double e1 = m - kap;
    const double e2 = im - ik;
    const double e3 =
        m1 * m1 * im5 + 0.25 * (im3 - ik * ik * ik);
    const double e4 = 0.5 * m2 * m2 * im7 + 1.25 * m1 * m1 * im7 -
                      3.5 * m1 * m1 * m1 * m1 * im9 +
                      (im5 - ik * ik * ik * ik * ik) / 16.0;
    integ[0][i] = e1;
    integ[1][i] = e2;
    integ[2][i] = e3;
    integ[3][i] = e4;
    integ[4][i] = e2 + e1 * ik * ik;                       // F1 density
    integ[5][i] = e3 + 0.75 * e1 * ik * ik * ik * ik;      // F2 density
    integ[6][i] = e4 + (5.0 / 16.0) * e1 * std::pow(ik, 6);  // F3 density
  }, 16384);

  ConservedReport rep;
  double* slots[7] = {&rep.E1, &rep.E2, &rep.E3, &rep.E4,
                      &rep.F1, &rep.F2, &rep.F3};
  for (int q = 0; q < 7; ++q) {
    const Quad r = integrate(field, integ[q]);
    *slots[q] = r.value;
    rep.quadrature_error[q] = r.error;
  }
  return rep;
}

std::pair<double, double> closed_form_invariants(double c, double kappa) {
  check_speed_window(c, kappa);
  const double k2 = kappa * kappa;
  const double root = std::sqrt((c - 3.0 * k2) / (c - k2));
  const double lg =
      std::log((std::sqrt(c - k2) + std::sqrt(c - 3.0 * k2)) /
               (std::sqrt(2.0) * kappa));
  const double f1 = 8.0 / kappa * (lg - root);
  const double f2 = 4.0 / (kappa * k2) *
                    (lg - (c + 3.0 * k2) / (3.0 * (c - k2)) * root);
  return {f1, f2};
}

std::pair<double, double> two_soliton_invariants(double c1, double c2,
                                                 double kappa) {
  const auto a = closed_form_invariants(c1, kappa);
  const auto b = closed_form_invariants(c2, kappa);
  return {a.first + b.first, a.second + b.second};
}

std::pair<double, double> soliton_ratios(double c, double kappa) {
  check_speed_window(c, kappa);
  const double k2 = kappa * kappa;
  const double omega1 = (c + 3.0 * k2) / (2.0 * k2 * (c - k2));
  const double omega2 = (3.0 * c * c + 2.0 * c * k2 + 27.0 * k2 * k2) /
                        (16.0 * k2 * k2 * (c - k2) * (c - k2));
  return {omega1, omega2};
}

LagrangePair lagrange_multipliers(double c1, double c2, double kappa) {
  check_speed_window(c1, kappa);
  check_speed_window(c2, kappa);
  if (!(c2 < c1)) throw SpeedOrdering();
  const double k2 = kappa * kappa;
  const double r1 = 1.0 / (c1 - k2), r2 = 1.0 / (c2 - k2);
  LagrangePair l;
  l.lambda1 = -1.0 / (16.0 * k2 * k2) + (r1 + r2) / (2.0 * k2) + 2.0 * r1 * r2;
  l.lambda2 = -(1.0 / (4.0 * k2) + r1 + r2);
  return l;
}

Gradients gradient_G(const GridField& field, const LagrangePair& lambdas) {
  if (!(field.min_m() > 0.0)) throw PositivityViolated();
  if (!field.has_derivs(4))
    throw ValidationError("gradient_G needs derivatives up to order 4");
  const std::size_t n = field.n;
  const double kap = field.kappa;
  // background pair terms cancel exactly when m == kappa bitwise: powers of
  // m and kappa are built through the same floating-point sequence
  const double kk = kap * kap;
  const double k4v = kk * kk, k6v = k4v * kk;

  Gradients out;
  out.g1.resize(n);
  out.g2.resize(n);
  out.g3.resize(n);
  out.g.resize(n);
  parallel_for(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t i) {
    const double m = field.m[i];
    const double m1 = field.dm[0][i], m2 = field.dm[1][i];
    const double m3 = field.dm[2][i], m4 = field.dm[3][i];
    const double mm = m * m;
    const double m4v = mm * mm, m6v = m4v * mm;
    const double im = 1.0 / m;
    const double im2 = im * im, im4 = im2 * im2, im5 = im4 * im;
    const double im6 = im5 * im, im7 = im6 * im, im8 = im7 * im;
    const double im9 = im8 * im, im10 = im9 * im;
    const double g1 = 1.0 / kk - 1.0 / mm;
    const double g2 = -2.0 * m2 * im5 + 5.0 * m1 * m1 * im6 +
                      0.75 * (1.0 / k4v - 1.0 / m4v);
    const double g3 = m4 * im7 - 14.0 * m1 * m3 * im8 -
                      10.5 * m2 * m2 * im8 + 98.0 * m1 * m1 * m2 * im9 -
                      94.5 * m1 * m1 * m1 * m1 * im10 - 2.5 * m2 * im7 +
                      8.75 * m1 * m1 * im8 +
                      (5.0 / 16.0) * (1.0 / k6v - 1.0 / m6v);
    out.g1[i] = g1;
    out.g2[i] = g2;
    out.g3[i] = g3;
    out.g[i] = g3 + lambdas.lambda1 * g1 + lambdas.lambda2 * g2;
  }, 16384);
  return out;
}

double criticality_residual(const GridField& field,
                            const LagrangePair& lambdas) {
  const Gradients grads = gradient_G(field, lambdas);
  double worst = 0.0;
  for (double v : grads.g) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace mch
