#include <cmath>

#include <doctest.h>

#include "mch/errors.hpp"
#include "mch/params.hpp"

using namespace mch;

TEST_SUITE_BEGIN("params");

TEST_CASE("wavenumber from speed") {
  CHECK(wavenumber_from_speed(5.0, 1.0) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  // substituting back into the speed relation recovers c to machine precision
  for (double c : {3.5, 4.0, 5.0, 7.0, 8.9}) {
    const double k = wavenumber_from_speed(c, 1.0);
    const double kk = k;  // kappa = 1
    CHECK(std::abs((3.0 - kk * kk) / (1.0 - kk * kk) - c) < 1e-12 * c);
  }
  // limit c -> 3 kappa^2 from above
  CHECK(wavenumber_from_speed(3.0 + 1e-12, 1.0) < 1e-5);
  CHECK_THROWS_AS(wavenumber_from_speed(9.0, 1.0), SpeedOutOfWindow);
  CHECK_THROWS_AS(wavenumber_from_speed(3.0, 1.0), SpeedOutOfWindow);
  CHECK_THROWS_AS(wavenumber_from_speed(5.0, -1.0), ValidationError);
}

TEST_CASE("build_params derived constants") {
  const SolitonParams p = build_params(1.0, 5.0, 4.0);
  CHECK(p.k1 == doctest::Approx(0.70710678118654752).epsilon(1e-13));
  CHECK(p.k2 == doctest::Approx(0.57735026918962576).epsilon(1e-13));
  CHECK(p.ctilde1 == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(p.ctilde2 == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(p.exp_neg_psi1 == doctest::Approx(0.1715729).epsilon(1e-6));
  CHECK(std::exp(p.two_h) == doctest::Approx(0.0102051).epsilon(1e-4));
  // exact speed relations
  CHECK(p.ctilde1 / p.kappa + p.kappa * p.kappa ==
        doctest::Approx(5.0).epsilon(1e-14));
  CHECK(p.ctilde2 / p.kappa + p.kappa * p.kappa ==
        doctest::Approx(4.0).epsilon(1e-14));

  CHECK_THROWS_AS(build_params(1.0, 4.0, 5.0), SpeedOrdering);
  CHECK_THROWS_AS(build_params(1.0, 5.0, 9.5), SpeedOutOfWindow);
}

TEST_CASE("invariant window holds for random speeds") {
  // kappa*k in (0, sqrt(3)/2) and k1 > k2 > 0 across the window
  unsigned state = 12345;
  auto rnd = [&]() {
    state = state * 1664525u + 1013904223u;
    return static_cast<double>(state) / 4294967296.0;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const double kappa = 0.3 + 2.0 * rnd();
    const double k2 = kappa * kappa;
    const double c2 = 3.0 * k2 + (9.0 * k2 - 3.0 * k2) * (0.05 + 0.6 * rnd());
    const double c1 = c2 + (9.0 * k2 - c2) * (0.1 + 0.8 * rnd());
    const SolitonParams p = build_params(kappa, c1, c2);
    CHECK(p.k1 > p.k2);
    CHECK(p.k2 > 0.0);
    CHECK(kappa * p.k1 < std::sqrt(3.0) / 2.0);
    CHECK(p.exp_neg_psi1 > 0.0);
    CHECK(p.exp_neg_psi1 < 1.0);
    CHECK(std::exp(p.two_h) > 0.0);
  }
}

TEST_CASE("one-soliton constants") {
  const auto s = one_soliton_constants(5.0, 1.0);
  CHECK(s.A == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(s.E == doctest::Approx(32.0).epsilon(1e-14));
  CHECK(s.phi0 == doctest::Approx(std::sqrt(8.0) - 2.0).epsilon(1e-13));
  CHECK(s.phi0 > 0.0);
  CHECK(s.phi0 < 1.0);
  CHECK(one_soliton_u_crest(5.0, 1.0) ==
        doctest::Approx(1.8284271).epsilon(1e-6));
  CHECK(one_soliton_m_crest(5.0, 1.0) ==
        doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("collision phase shift") {
  const SolitonParams p = build_params(1.0, 5.0, 4.0);
  const PhaseShift s = collision_phase_shift(p);
  // 2*ln((k1-k2)/(k1+k2)) with k1 = sqrt(1/2), k2 = sqrt(1/3)
  CHECK(s.xi_shift == doctest::Approx(-4.5848633391).epsilon(1e-9));
  CHECK(s.xi_shift < 0.0);
  // closed form of the crest displacement: -delta/(kappa k1) - 2 psi2
  const double expected = -s.xi_shift / (p.kappa * p.k1) - 2.0 * p.psi2;
  CHECK(s.x_shift_prediction == doctest::Approx(expected).epsilon(1e-9));
  CHECK(std::isfinite(s.x_shift_prediction));

  // strictly negative for any valid ordered pair
  for (double c2 : {3.5, 4.0, 6.0}) {
    const SolitonParams q = build_params(1.0, 7.0, c2);
    CHECK(collision_phase_shift(q).xi_shift < 0.0);
  }

  // k1 -> k2 is degenerate
  CHECK_THROWS_AS(build_params(1.0, 5.0, 5.0 - 1e-15), ValidationError);
}

TEST_SUITE_END();
