#include <cmath>

#include <doctest.h>

#include "mch/curve.hpp"
#include "mch/errors.hpp"

using namespace mch;

TEST_SUITE_BEGIN("curve");

TEST_CASE("background limits far from the solitons") {
  const SolitonParams p = build_params(1.0, 5.0, 4.0);
  const auto grid = uniform_grid(0.0, 120.0, 2048);
  const ParametricCurve c = eval_curve(p, 0.0, grid);
  // tails: p -> 1/kappa, m -> kappa, u -> kappa
  CHECK(std::abs(c.m.front() - 1.0) < 1e-12);
  CHECK(std::abs(c.m.back() - 1.0) < 1e-12);
  CHECK(std::abs(c.u.front() - 1.0) < 1e-12);
  CHECK(std::abs(c.u.back() - 1.0) < 1e-12);
}

TEST_CASE("x is strictly increasing and m positive") {
  const SolitonParams p = build_params(1.0, 5.0, 4.0);
  for (double tau : {-7.0, 0.0, 3.0}) {
    const ParametricCurve c = eval_curve(p, tau, default_y_grid(p, tau, 4096));
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
      REQUIRE(c.x[i] < c.x[i + 1]);
    double lo = 1e300;
    for (double v : c.m) lo = std::min(lo, v);
    CHECK(lo > 0.0);
  }
}

TEST_CASE("one-soliton crest values") {
  const TauSystem sys = one_soliton_system(5.0, 1.0);
  const Crest crest = find_crest(sys, 0.0, -30.0, 30.0);
  CHECK(crest.u == doctest::Approx(1.8284271).epsilon(1e-7));
  CHECK(crest.m == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-9));

  // u -> kappa in the tails
  const auto grid = uniform_grid(0.0, 90.0, 1024);
  const ParametricCurve c = one_soliton_curve(5.0, 1.0, grid);
  CHECK(std::abs(c.u.front() - 1.0) < 1e-12);
  CHECK(std::abs(c.u.back() - 1.0) < 1e-12);
}

TEST_CASE("one-soliton profile is symmetric about the crest in xi") {
  // analytic crest: xi = xi0, i.e. y0 = xi0 / k
  const TauSystem sys = one_soliton_system(5.0, 1.0);
  const auto cs = one_soliton_constants(5.0, 1.0);
  const double y_crest = cs.xi0 / sys.k1;
  for (double s : {0.25, 1.0, 2.5, 6.0}) {
    const double up = curve_point(sys, 0.0, y_crest + s / sys.k1).u;
    const double um = curve_point(sys, 0.0, y_crest - s / sys.k1).u;
    CHECK(up == doctest::Approx(um).epsilon(1e-12));
  }
  // the searched crest agrees with the analytic location to the sqrt(eps)
  // resolution of a flat quadratic maximum
  const Crest crest = find_crest(sys, 0.0, -30.0, 30.0);
  CHECK(std::abs(crest.y - y_crest) < 1e-6);
}

TEST_CASE("homoclinic oracle") {
  const auto s = one_soliton_constants(5.0, 1.0);
  CHECK(s.A == doctest::Approx(4.0));
  CHECK(s.E == doctest::Approx(32.0));
  // equilibrium: the background is the fixed point
  const HomoclinicSample eq = homoclinic_oracle(1.0, 0.0, 5.0, 1.0);
  CHECK(std::abs(eq.residual) < 1e-14);
  CHECK(eq.mu == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(homoclinic_oracle(10.0, 0.0, 5.0, 1.0), SqrtDomain);
}

TEST_CASE("tau-function one-soliton satisfies the homoclinic relations") {
  // the two independent representations agree pointwise
  const auto grid = uniform_grid(0.0, 40.0, 4001);
  const ParametricCurve c = one_soliton_curve(5.0, 1.0, grid);
  double worst_res = 0.0, worst_mu = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double phi = c.u[i];
    const double phi_x = c.u_y[i] * c.m[i];  // d/dx = m d/dy
    const HomoclinicSample h = homoclinic_oracle(phi, phi_x, 5.0, 1.0);
    worst_res = std::max(worst_res, std::abs(h.residual));
    worst_mu = std::max(worst_mu, std::abs(h.mu - c.m[i]));
  }
  CHECK(worst_res < 1e-10);
  CHECK(worst_mu < 1e-10);
}

TEST_CASE("associated mCH residual vanishes on exact solutions") {
  const SolitonParams p = build_params(1.0, 5.0, 4.0);
  const TauSystem sys = two_soliton_system(p);
  double worst = 0.0;
  for (double tau : {-4.0, 0.0, 4.0})
    for (double y : uniform_grid(tau * 3.0, 40.0, 801))
      worst = std::max(worst, std::abs(assoc_mch_residual(sys, tau, y)));
  CHECK(worst < 1e-8);
}

TEST_CASE("curve jets match finite differences in y") {
  const SolitonParams p = build_params(1.0, 5.0, 4.0);
  const TauSystem sys = two_soliton_system(p);
  const double y = 0.6, tau = 0.5, eps = 1e-5;
  const CurvePoint pt = curve_point(sys, tau, y);
  const CurvePoint pp = curve_point(sys, tau, y + eps);
  const CurvePoint pm = curve_point(sys, tau, y - eps);
  for (int j = 0; j + 1 <= 4; ++j) {
    const double fd = (pp.m_jet[j] - pm.m_jet[j]) / (2.0 * eps);
    CHECK(pt.m_jet[j + 1] == doctest::Approx(fd).epsilon(1e-7));
  }
  // dx/dy = 1/m
  const double fd_x = (pp.x - pm.x) / (2.0 * eps);
  CHECK(fd_x == doctest::Approx(1.0 / pt.m_jet[0]).epsilon(1e-9));
  // u_y
  const double fd_u = (pp.u - pm.u) / (2.0 * eps);
  CHECK(pt.u_y == doctest::Approx(fd_u).epsilon(1e-8));
}

TEST_CASE("newton inversion matches direct evaluation") {
  const SolitonParams p = build_params(1.0, 5.0, 4.0);
  const TauSystem sys = two_soliton_system(p);
  for (double y : {-3.0, 0.0, 1.7, 12.0}) {
    const CurvePoint pt = curve_point(sys, 0.5, y);
    CHECK(m_at_x(sys, 0.5, pt.x) == doctest::Approx(pt.m_jet[0]).epsilon(1e-12));
  }
}

TEST_SUITE_END();
