#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "mch/params.hpp"

namespace mch {

// One term coeff * exp(w1*xi1 + w2*xi2) of a positive exponential sum.
// Coefficients are stored as logs so the sum can be evaluated entirely in
// the log domain; |xi| up to ~700 stays finite.
struct ExpTerm {
  double log_coeff;
  int w1, w2;
};

// Partial derivatives of log S with respect to (xi1, xi2).
// c[i][j] = d^{i+j} log S / dxi1^i dxi2^j for i + j <= max_order,
// with c[0][0] = log S itself. All entries are exact rational combinations
// of softmax-weighted moments of the term weights; nothing is differenced.
struct LogJet {
  static constexpr int kMaxOrder = 6;
  double c[kMaxOrder + 1][kMaxOrder + 1];
};

class ExponentialSum {
 public:
  explicit ExponentialSum(std::vector<ExpTerm> terms);

  double log_value(double xi1, double xi2) const;
  // log value plus the two first partials (fast path for value-only curves)
  void log_grad(double xi1, double xi2, double& val, double& d1,
                double& d2) const;
  // value, (10), (01), (20), (11), (02) partials of log S
  void log_grad2(double xi1, double xi2, double out[6]) const;
  LogJet log_jet(double xi1, double xi2) const;

  const std::vector<ExpTerm>& terms() const { return terms_; }

 private:
  std::vector<ExpTerm> terms_;
  // powtab_[j][a][b] = w1_j^a * w2_j^b, precomputed for the moment sums
  std::vector<std::array<std::array<double, LogJet::kMaxOrder + 1>,
                         LogJet::kMaxOrder + 1>>
      powtab_;
};

// Tau pair (f, g) bound to the frame constants that turn (y, tau) into
// (xi1, xi2). Covers both the 1-soliton (second mode switched off) and the
// 2-soliton.
struct TauSystem {
  ExponentialSum f, g;
  double k1 = 0.0, k2 = 0.0;  // d(xi_i)/dy
  double v1 = 0.0, v2 = 0.0;  // d(xi_i)/dtau = -k_i * ctilde_i
  double kappa = 1.0;
  double d = 0.0;
  double y10 = 0.0, y20 = 0.0;
  double ctilde1 = 0.0, ctilde2 = 0.0;

  double xi1(double y, double tau) const {
    return k1 * (y - ctilde1 * tau + y10);
  }
  double xi2(double y, double tau) const {
    return k2 == 0.0 ? 0.0 : k2 * (y - ctilde2 * tau + y20);
  }
};

TauSystem two_soliton_system(const SolitonParams& p);
TauSystem one_soliton_system(double c, double kappa, double y0 = 0.0,
                             double d = 0.0);

struct TauPair {
  ExponentialSum f, g;
};
TauPair tau_pair(const SolitonParams& p);

// d^a/dy^a d^b/dtau^b of log S from its xi-jet; a + b <= kMaxOrder.
double yt_deriv(const LogJet& jet, const TauSystem& sys, int a, int b);

// Derivative jets of products and reciprocals (Leibniz / inverse recurrence);
// arrays hold value..K-th derivative.
void product_jet(const double* a, const double* b, double* out, int K);
void reciprocal_jet(const double* p, double* out, int K);

}  // namespace mch
