#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mch/functionals.hpp"
#include "mch/grid_field.hpp"
#include "mch/params.hpp"

namespace mch {

// Symmetric pentadiagonal matrix stored by diagonals: diag[k][i] = A(i, i+k).
struct BandedSymmetric {
  std::size_t n = 0;
  std::array<std::vector<double>, 3> diag;

  double at(std::size_t i, std::size_t j) const;
  void apply(std::span<const double> v, std::span<double> out) const;
};

// Discretization of the second-variation operator on Dirichlet interior
// points, assembled in quadratic-form shape D2^T a D2 - D1^T w D1 + b so
// symmetry is exact by construction.
struct SelfAdjointOperator {
  BandedSymmetric mat;
  double x0 = 0.0, h = 0.0;
  std::size_t grid_n = 0;  // including the two eliminated boundary points
  LagrangePair lambdas;
  double max_abs_b = 0.0;
  double b_background = 0.0;  // b at the domain ends (symbol value at xi=0)
};

struct SpectrumReport {
  std::vector<double> lowest;  // ascending
  int n_negative = 0;
  int n_kernel = 0;
  double essential_edge = 0.0;
  double tol = 0.0;
  double x0 = 0.0, h = 0.0;
  std::size_t n = 0;
};

SelfAdjointOperator assemble_L(const GridField& mu, const LagrangePair& l);

// Standard window for spectral work: centered on the crest midpoint, sized
// so mu~ - kappa decays to ~1e-12 at both ends.
struct SpectralWindow {
  double x0 = 0.0, h = 0.0, center = 0.0, half_width = 0.0;
};
SpectralWindow spectral_window(const SolitonParams& p, double t,
                               std::size_t n, double half_width = 0.0);

// 2-soliton momentum with 4 transported derivatives on the standard window.
GridField spectral_mu_field(const SolitonParams& p, double t, std::size_t n,
                            double half_width = 0.0);

// Lower edge of the essential spectrum of the operator at background kappa.
double essential_edge(double c1, double c2, double kappa);

// Lowest eigenvalues by Sturm-sequence bisection on the banded LDL^T inertia.
// Counts below the kernel tolerance are exact integer inertias, not
// clustering heuristics.
SpectrumReport bottom_spectrum(const SelfAdjointOperator& op, int count,
                               double essential_edge_hint = 0.0);

// Number of eigenvalues of op strictly below sigma (LDL^T inertia).
int inertia_below(const BandedSymmetric& mat, double sigma);

struct KernelPair {
  std::vector<double> mu1, mu2;
  double x0 = 0.0, h = 0.0;
  double gram_det = 0.0;  // of the normalized pair; > 0 means independent
};

// Phase derivatives d(mu~)/d(y_i0) at fixed x via Richardson-extrapolated
// central differences of the resampled 2-soliton; these span ker L.
KernelPair kernel_directions(const SolitonParams& p, double t, double x0,
                             double h, std::size_t n, double eps = 1e-2);

// Sign changes of Wr = mu1*(mu2)_x - mu2*(mu1)_x where |Wr| is above the
// noise floor. Throws DegenerateInput when the pair is numerically parallel.
int wronskian_sign_changes(std::span<const double> mu1,
                           std::span<const double> mu2, double h);

// Independent route: the y-frame Wronskian from analytic xi-derivatives of
// log(g/f); same zero count as the x-frame form.
int wronskian_sign_changes_y(const SolitonParams& p, double tau,
                             std::span<const double> y_grid);

}  // namespace mch
