#pragma once

namespace mch {

// Two-soliton parameter set on background kappa. Smooth solitons exist only
// for speeds in (3*kappa^2, 9*kappa^2); all derived constants are filled by
// build_params and never mutated afterwards.
struct SolitonParams {
  double kappa = 1.0;
  double c1 = 0.0, c2 = 0.0;    // wave speeds, c1 > c2
  double y10 = 0.0, y20 = 0.0;  // phase constants
  double d = 0.0;               // free offset of the x-parametrization

  // derived
  double k1 = 0.0, k2 = 0.0;            // wavenumbers, kappa*k in (0, sqrt(3)/2)
  double ctilde1 = 0.0, ctilde2 = 0.0;  // y-frame speeds
  double psi1 = 0.0, psi2 = 0.0;        // shift constants, exp(-psi) in (0,1)
  double exp_neg_psi1 = 0.0, exp_neg_psi2 = 0.0;
  double two_h = 0.0;  // interaction constant, exp(2h) = ((k1-k2)/(k1+k2))^2
};

// Inverts the speed relation c = kappa^2*(3-(kappa*k)^2)/(1-(kappa*k)^2).
// Throws SpeedOutOfWindow unless 3*kappa^2 < c < 9*kappa^2.
double wavenumber_from_speed(double c, double kappa);

SolitonParams build_params(double kappa, double c1, double c2,
                           double y10 = 0.0, double y20 = 0.0, double d = 0.0);

// Constants of the single-soliton traveling-wave reduction.
struct OneSolitonConstants {
  double A;     // integration constant, kappa*(c-kappa^2)
  double E;     // first-integral constant, (c-kappa^2)*(c+3*kappa^2)
  double xi0;   // crest offset in the xi variable
  double phi0;  // crest amplitude of the rescaled profile, in (0,1)
};
OneSolitonConstants one_soliton_constants(double c, double kappa);

// Crest values of the single soliton: max of u and of m over the line.
double one_soliton_u_crest(double c, double kappa);
double one_soliton_m_crest(double c, double kappa);

struct PhaseShift {
  double xi_shift;            // 2*ln((k1-k2)/(k1+k2)), always negative
  double x_shift_prediction;  // forward displacement of the fast crest
};

// Interaction phase shift of the fast soliton, plus its x-space displacement
// obtained by locating the crest of the asymptotic one-soliton maps with and
// without the shift terms. Throws DegenerateSpeeds when k1 == k2.
PhaseShift collision_phase_shift(const SolitonParams& p);

}  // namespace mch
