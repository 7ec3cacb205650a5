#pragma once

#include <array>
#include <utility>
#include <vector>

#include "mch/grid_field.hpp"

namespace mch {

// Values of the four conserved integrals and their recombinations, together
// with Richardson error estimates from a half-resolution pass.
struct ConservedReport {
  double E1 = 0, E2 = 0, E3 = 0, E4 = 0;
  double F1 = 0, F2 = 0, F3 = 0;
  std::array<double, 7> quadrature_error{};  // same order as the values

  std::array<double, 7> values() const { return {E1, E2, E3, E4, F1, F2, F3}; }
};

struct LagrangePair {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

// Composite-Simpson quadrature of the background-subtracted integrands.
// Line fields are truncated where |m - kappa| < 1e-14; periodic fields are
// integrated over the full period. Needs m_x and m_xx (transported arrays if
// present, spectral otherwise on periodic grids).
ConservedReport conserved_report(const GridField& field);

// Closed forms of F1 and F2 at the single soliton with speed c.
std::pair<double, double> closed_form_invariants(double c, double kappa);

// Two-soliton invariants: sums of the single-soliton closed forms.
std::pair<double, double> two_soliton_invariants(double c1, double c2,
                                                 double kappa);

// Proportionality constants of the single-soliton variational identities:
// G2 = omega1 * G1 and G3 = omega2 * G1.
std::pair<double, double> soliton_ratios(double c, double kappa);

// Multipliers that make the 2-soliton a critical point of
// F3 + lambda1*F1 + lambda2*F2.
LagrangePair lagrange_multipliers(double c1, double c2, double kappa);

struct Gradients {
  std::vector<double> g1, g2, g3, g;
};

// Pointwise variational gradients; needs derivatives up to order 4.
Gradients gradient_G(const GridField& field, const LagrangePair& lambdas);

// sup norm of the combined gradient over the grid.
double criticality_residual(const GridField& field,
                            const LagrangePair& lambdas);

}  // namespace mch
