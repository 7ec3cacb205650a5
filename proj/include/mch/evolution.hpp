#pragma once

#include <array>
#include <optional>
#include <vector>

#include "mch/functionals.hpp"
#include "mch/grid_field.hpp"
#include "mch/params.hpp"

namespace mch {

struct EvolutionConfig {
  double dt = 0.0;    // 0 = auto: 0.9 x advisory bound 0.5*h/max|u^2-u_x^2|
  double t_end = 10.0;
  double sample_interval = 0.5;
  double positivity_floor = 0.0;  // 0 = 1e-10 * kappa
  bool dealias = true;            // 2/3-rule truncation of the rhs
  bool conserved_each_sample = true;
  // box construction, used by the experiment drivers
  std::size_t grid_n = 8192;
  double half_width = 0.0;  // 0 = 60/k2
};

enum class RunStatus { ok, positivity_lost, blow_up };

struct TrajectorySample {
  double t = 0.0;
  GridField field;
  std::optional<ConservedReport> conserved;
  double min_m = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  RunStatus status = RunStatus::ok;
  double t_fail = 0.0;  // meaningful when status != ok
  double dt_used = 0.0;
};

// m_t = -[(u^2 - u_x^2) m_x + 2 m^2 u_x] with spectral derivatives on the
// periodic grid. Throws PositivityViolated when min m <= 0.
std::vector<double> rhs(const GridField& field);

// Classical RK4 with fixed step. Aborts cleanly (partial trajectory, status
// set) when positivity or finiteness is lost.
Trajectory evolve(const GridField& m0, const EvolutionConfig& config);

struct DriftReport {
  // order: E1..E4, F1..F3; max over samples of |v(t)-v(0)|/(|v(0)|+1e-30)
  std::array<double, 7> drift{};
};
DriftReport conservation_drift(const Trajectory& traj);

struct OrbitalOptions {
  int grid_points = 21;     // coarse search is grid_points^2 candidates
  double widths = 2.0;      // search half-range in soliton widths
  double nm_tol = 1e-10;    // Nelder-Mead simplex tolerance
  int max_iter = 400;
  int oversample = 2;       // curve knots per grid point when sampling mu~
};

struct OrbitalFit {
  double distance = 0.0;
  double y10_fit = 0.0, y20_fit = 0.0;
  bool stalled = false;
  int evals = 0;
};

// H2-closest member of the phase-translated 2-soliton family: coarse grid
// search over (y10, y20) followed by Nelder-Mead.
OrbitalFit orbital_distance(const GridField& field, const SolitonParams& p,
                            double t, const OrbitalOptions& opts = {});

// Exact 2-soliton sampled on (and wrapped into) the periodic box, using the
// same sampler as the orbital candidates.
GridField orbital_reference_field(const SolitonParams& p, double t, double x0,
                                  double h, std::size_t n, int oversample = 2);

struct CollisionReport {
  double amp_fast_measured = 0, amp_fast_expected = 0;
  double amp_slow_measured = 0, amp_slow_expected = 0;
  double shift_fast_measured = 0, shift_fast_predicted = 0;
  double shift_slow_measured = 0, shift_slow_predicted = 0;
  bool ordering_restored = false;
  DriftReport drift;
  RunStatus status = RunStatus::ok;
  std::vector<double> track_t, track_fast_x, track_slow_x;
};

// Evolves the exact 2-soliton through its collision; measures outgoing crest
// amplitudes and the fast/slow crest displacements against the asymptotic
// phase-shift predictions.
CollisionReport collision_experiment(const SolitonParams& p,
                                     const EvolutionConfig& config);

struct PerturbationSpec {
  std::vector<double> deltas{1e-3, 2e-3, 4e-3};  // H2 sizes
  double width = 1.0;
  std::optional<double> center;  // default: midpoint between the crests
};

struct StabilityRun {
  double delta = 0.0;
  double sup_distance = 0.0;
  double amplification = 0.0;  // sup_distance / delta (0 for delta = 0)
  RunStatus status = RunStatus::ok;
  std::vector<double> times, distances;
};

struct StabilityReport {
  std::vector<StabilityRun> runs;
  double amp_ratio = 0.0;  // max/min amplification over delta > 0 runs
};

// Evolves mu~(0) + delta * p for a unit-H2 bump p and records the orbital
// distance history per perturbation size.
StabilityReport stability_experiment(const SolitonParams& p,
                                     const PerturbationSpec& pert,
                                     const EvolutionConfig& config,
                                     const OrbitalOptions& opts = {});

}  // namespace mch
