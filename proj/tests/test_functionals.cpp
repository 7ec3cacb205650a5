#include <cmath>
#include <random>

#include <doctest.h>

#include "mch/errors.hpp"
#include "mch/functionals.hpp"

using namespace mch;

TEST_SUITE_BEGIN("functionals");

namespace {

GridField soliton_field(const SolitonParams& p, double t, std::size_t n,
                        double hw = 0.0) {
  const TauSystem sys = two_soliton_system(p);
  if (hw == 0.0) hw = 60.0 / p.k2;
  double xc, mv;
  curve_point_values(sys, t, soliton_center_y(p, t, 2), xc, mv);
  const auto curve =
      eval_curve(sys, t, y_grid_covering_x(sys, t, xc - hw, xc + hw, 4 * n));
  ResampleOptions opts;
  return resample(curve, xc - hw, 2.0 * hw / static_cast<double>(n), n, opts);
}

GridField one_soliton_field(double c, double kappa, std::size_t n) {
  const TauSystem sys = one_soliton_system(c, kappa);
  const double k = wavenumber_from_speed(c, kappa);
  const double hw = 60.0 / k;
  const auto curve =
      eval_curve(sys, 0.0, y_grid_covering_x(sys, 0.0, -hw, hw, 4 * n));
  ResampleOptions opts;
  return resample(curve, -hw, 2.0 * hw / static_cast<double>(n), n, opts);
}

GridField background_field(double kappa, std::size_t n) {
  GridField f;
  f.x0 = -10.0;
  f.h = 20.0 / static_cast<double>(n);
  f.n = n;
  f.kappa = kappa;
  f.m.assign(n, kappa);
  for (auto& v : f.dm) v.assign(n, 0.0);
  return f;
}

}  // namespace

TEST_CASE("background field has vanishing integrals and gradients") {
  const GridField f = background_field(1.4, 512);
  const ConservedReport rep = conserved_report(f);
  for (double v : rep.values()) CHECK(std::abs(v) < 1e-14);

  const LagrangePair l{0.3, -0.7};
  const Gradients g = gradient_G(f, l);
  for (std::size_t j = 0; j < f.n; ++j) {
    CHECK(g.g1[j] == 0.0);
    CHECK(g.g2[j] == 0.0);
    CHECK(g.g3[j] == 0.0);
  }
  CHECK(criticality_residual(f, l) == 0.0);
}

TEST_CASE("closed-form invariants") {
  const auto [f1, f2] = closed_form_invariants(5.0, 1.0);
  CHECK(f1 == doctest::Approx(8.0 * (std::log(1.0 + std::sqrt(2.0)) -
                                     std::sqrt(0.5))).epsilon(1e-14));
  CHECK(f1 == doctest::Approx(1.3941345).epsilon(1e-6));
  CHECK(f2 == doctest::Approx(4.0 * (std::log(1.0 + std::sqrt(2.0)) -
                                     (8.0 / 12.0) * std::sqrt(0.5)))
                  .epsilon(1e-14));
  CHECK(f2 == doctest::Approx(1.6398763).epsilon(1e-6));

  // both values vanish as c -> 3 kappa^2
  const auto [g1, g2] = closed_form_invariants(3.0 + 1e-9, 1.0);
  CHECK(std::abs(g1) < 1e-4);
  CHECK(std::abs(g2) < 1e-4);
  CHECK_THROWS_AS(closed_form_invariants(9.0, 1.0), SpeedOutOfWindow);
}

TEST_CASE("quadrature matches the closed forms on the 1-soliton") {
  const GridField f = one_soliton_field(5.0, 1.0, 8192);
  const ConservedReport rep = conserved_report(f);
  const auto [f1, f2] = closed_form_invariants(5.0, 1.0);
  CHECK(rep.F1 == doctest::Approx(f1).epsilon(1e-8));
  CHECK(rep.F2 == doctest::Approx(f2).epsilon(1e-8));
  // the Richardson estimates bound the true quadrature error here
  for (double e : rep.quadrature_error) {
    CHECK(e >= 0.0);
    CHECK(e < 1e-6);
  }
}

TEST_CASE("recombination identities hold on every field") {
  for (double t : {-9.0, 0.0, 6.0}) {
    const SolitonParams p = build_params(1.0, 5.0, 4.0);
    const GridField f = soliton_field(p, t, 4096);
    const ConservedReport r = conserved_report(f);
    const double k2 = f.kappa * f.kappa;
    CHECK(r.F1 == doctest::Approx(r.E2 + r.E1 / k2).epsilon(1e-12));
    CHECK(r.F2 == doctest::Approx(r.E3 + 0.75 * r.E1 / (k2 * k2)).epsilon(1e-12));
    CHECK(r.F3 ==
          doctest::Approx(r.E4 + 5.0 / 16.0 * r.E1 / (k2 * k2 * k2)).epsilon(1e-12));
  }
}

TEST_CASE("two-soliton invariants are time-invariant and match the sums") {
  const SolitonParams p = build_params(1.0, 5.0, 4.0);
  const ConservedReport ra = conserved_report(soliton_field(p, -30.0, 8192));
  const ConservedReport rb = conserved_report(soliton_field(p, 30.0, 8192));
  const auto va = ra.values();
  const auto vb = rb.values();
  for (int q = 0; q < 7; ++q)
    CHECK(va[q] == doctest::Approx(vb[q]).epsilon(1e-8));

  const auto [f1, f2] = two_soliton_invariants(5.0, 4.0, 1.0);
  CHECK(ra.F1 == doctest::Approx(f1).epsilon(1e-6));
  CHECK(ra.F2 == doctest::Approx(f2).epsilon(1e-6));

  // symmetric under speed swap by construction
  const auto swapped = two_soliton_invariants(4.0, 5.0, 1.0);
  CHECK(swapped.first == f1);
  CHECK(swapped.second == f2);
}

TEST_CASE("quadrature converges at order >= 4") {
  const auto [f1_exact, unused] = closed_form_invariants(5.0, 1.0);
  (void)unused;
  auto err = [&](std::size_t n) {
    return std::abs(conserved_report(one_soliton_field(5.0, 1.0, n)).F1 -
                    f1_exact);
  };
  const double e0 = err(512), e1 = err(1024);
  CHECK(e0 / e1 >= 10.0);
}

TEST_CASE("soliton ratios") {
  const auto [w1a, w2a] = soliton_ratios(5.0, 1.0);
  CHECK(w1a == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w2a == doctest::Approx(0.4375).epsilon(1e-14));
  const auto [w1b, w2b] = soliton_ratios(4.0, 1.0);
  CHECK(w1b == doctest::Approx(7.0 / 6.0).epsilon(1e-14));
  CHECK(w2b == doctest::Approx(83.0 / 144.0).epsilon(1e-14));
}

TEST_CASE("single-soliton variational identities G2 = w1 G1, G3 = w2 G1") {
  const GridField f = one_soliton_field(5.0, 1.0, 8192);
  const auto [w1, w2] = soliton_ratios(5.0, 1.0);
  const Gradients g = gradient_G(f, LagrangePair{0.0, 0.0});
  double worst2 = 0.0, worst3 = 0.0;
  for (std::size_t j = 0; j < f.n; ++j) {
    worst2 = std::max(worst2, std::abs(g.g2[j] - w1 * g.g1[j]));
    worst3 = std::max(worst3, std::abs(g.g3[j] - w2 * g.g1[j]));
  }
  CHECK(worst2 < 1e-8);
  CHECK(worst3 < 1e-8);

  // pointwise ratio away from the zeros of G1
  for (std::size_t j = 0; j < f.n; ++j)
    if (std::abs(g.g1[j]) > 1e-3)
      CHECK(g.g2[j] / g.g1[j] == doctest::Approx(w1).epsilon(1e-6));
}

TEST_CASE("lagrange multipliers") {
  const LagrangePair l = lagrange_multipliers(5.0, 4.0, 1.0);
  CHECK(l.lambda1 == doctest::Approx(19.0 / 48.0).epsilon(1e-14));
  CHECK(l.lambda2 == doctest::Approx(-5.0 / 6.0).epsilon(1e-14));

  // identity lambda1 + w2(c_j) + lambda2 w1(c_j) = 0 for both speeds
  for (double c : {5.0, 4.0}) {
    const auto [w1, w2] = soliton_ratios(c, 1.0);
    CHECK(std::abs(l.lambda1 + w2 + l.lambda2 * w1) < 1e-14);
  }
  CHECK_THROWS_AS(lagrange_multipliers(4.0, 5.0, 1.0), SpeedOrdering);
}

TEST_CASE("multipliers reproduce the 2x2 linear-system solution") {
  // oracle: solve the system [1 w1(c_j)] [l1 l2]^T = -w2(c_j) directly
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> uk(0.4, 2.2), ur(0.05, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    const double kappa = uk(gen);
    const double k2 = kappa * kappa;
    const double c2 = 3.0 * k2 + 6.0 * k2 * ur(gen) * 0.8;
    const double c1 = c2 + (9.0 * k2 - c2) * (0.1 + 0.85 * ur(gen));
    const auto [w11, w21] = soliton_ratios(c1, kappa);
    const auto [w12, w22] = soliton_ratios(c2, kappa);
    const double det = w12 - w11;  // of [[1, w11], [1, w12]]
    const double l1 = (-w21 * w12 + w22 * w11) / det;
    const double l2 = (-w22 + w21) / det;
    const LagrangePair l = lagrange_multipliers(c1, c2, kappa);
    CHECK(l.lambda1 == doctest::Approx(l1).epsilon(1e-12));
    CHECK(l.lambda2 == doctest::Approx(l2).epsilon(1e-12));
  }
}

TEST_CASE("criticality of the 2-soliton") {
  const SolitonParams p = build_params(1.0, 5.0, 4.0);
  const LagrangePair l = lagrange_multipliers(5.0, 4.0, 1.0);
  const GridField f = soliton_field(p, 0.0, 8192);
  CHECK(criticality_residual(f, l) < 1e-6);

  // mismatched multipliers are detected
  const LagrangePair bad = lagrange_multipliers(7.0, 6.0, 1.0);
  CHECK(criticality_residual(f, bad) > 1e-2);
}

TEST_CASE("positivity is enforced") {
  GridField f = background_field(1.0, 128);
  f.m[64] = -0.5;
  CHECK_THROWS_AS(conserved_report(f), PositivityViolated);
  CHECK_THROWS_AS(gradient_G(f, LagrangePair{0.0, 0.0}), PositivityViolated);
}

TEST_SUITE_END();
