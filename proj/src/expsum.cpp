#include "mch/expsum.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace mch {

namespace {

constexpr int MO = LogJet::kMaxOrder;

constexpr std::array<std::array<double, MO + 1>, MO + 1> make_binom() {
  std::array<std::array<double, MO + 1>, MO + 1> b{};
  for (int n = 0; n <= MO; ++n) {
    b[n][0] = 1.0;
    for (int k = 1; k <= n; ++k)
      b[n][k] = b[n - 1][k - 1] + (k <= n - 1 ? b[n - 1][k] : 0.0);
  }
  return b;
}
constexpr auto kBinom = make_binom();

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

}  // namespace

ExponentialSum::ExponentialSum(std::vector<ExpTerm> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("empty exponential sum");
  powtab_.resize(terms_.size());
  for (std::size_t j = 0; j < terms_.size(); ++j)
    for (int a = 0; a <= MO; ++a)
      for (int b = 0; b <= MO; ++b)
        powtab_[j][a][b] = ipow(static_cast<double>(terms_[j].w1), a) *
                           ipow(static_cast<double>(terms_[j].w2), b);
}

double ExponentialSum::log_value(double xi1, double xi2) const {
  double emax = -1e300;
  for (const auto& t : terms_)
    emax = std::max(emax, t.log_coeff + t.w1 * xi1 + t.w2 * xi2);
  double z = 0.0;
  for (const auto& t : terms_)
    z += std::exp(t.log_coeff + t.w1 * xi1 + t.w2 * xi2 - emax);
  return emax + std::log(z);
}

void ExponentialSum::log_grad(double xi1, double xi2, double& val, double& d1,
                              double& d2) const {
  double emax = -1e300;
  for (const auto& t : terms_)
    emax = std::max(emax, t.log_coeff + t.w1 * xi1 + t.w2 * xi2);
  double z = 0.0, s1 = 0.0, s2 = 0.0;
  for (const auto& t : terms_) {
    const double e = std::exp(t.log_coeff + t.w1 * xi1 + t.w2 * xi2 - emax);
    z += e;
    s1 += e * t.w1;
    s2 += e * t.w2;
  }
  val = emax + std::log(z);
  d1 = s1 / z;
  d2 = s2 / z;
}

void ExponentialSum::log_grad2(double xi1, double xi2, double out[6]) const {
  double emax = -1e300;
  for (const auto& t : terms_)
    emax = std::max(emax, t.log_coeff + t.w1 * xi1 + t.w2 * xi2);
  double z = 0.0, m10 = 0.0, m01 = 0.0, m20 = 0.0, m11 = 0.0, m02 = 0.0;
  for (const auto& t : terms_) {
    const double e = std::exp(t.log_coeff + t.w1 * xi1 + t.w2 * xi2 - emax);
    z += e;
    m10 += e * t.w1;
    m01 += e * t.w2;
    m20 += e * t.w1 * t.w1;
    m11 += e * t.w1 * t.w2;
    m02 += e * t.w2 * t.w2;
  }
  m10 /= z;
  m01 /= z;
  m20 /= z;
  m11 /= z;
  m02 /= z;
  out[0] = emax + std::log(z);
  out[1] = m10;
  out[2] = m01;
  out[3] = m20 - m10 * m10;
  out[4] = m11 - m10 * m01;
  out[5] = m02 - m01 * m01;
}

LogJet ExponentialSum::log_jet(double xi1, double xi2) const {
  const std::size_t nt = terms_.size();
  double weight[8];
  double emax = -1e300;
  for (std::size_t j = 0; j < nt; ++j) {
    const auto& t = terms_[j];
    weight[j] = t.log_coeff + t.w1 * xi1 + t.w2 * xi2;
    emax = std::max(emax, weight[j]);
  }
  double z = 0.0;
  for (std::size_t j = 0; j < nt; ++j) {
    weight[j] = std::exp(weight[j] - emax);
    z += weight[j];
  }
  for (std::size_t j = 0; j < nt; ++j) weight[j] /= z;

  // moments m[a][b] = sum_j pi_j * w1_j^a * w2_j^b
  double m[MO + 1][MO + 1];
  for (int a = 0; a <= MO; ++a)
    for (int b = 0; b + a <= MO; ++b) {
      double s = 0.0;
      for (std::size_t j = 0; j < nt; ++j) s += weight[j] * powtab_[j][a][b];
      m[a][b] = s;
    }

  // cumulants: with alpha = alpha' + e_i,
  //   c_alpha = m_alpha - sum_{0<beta<=alpha'} C(alpha',beta) m_beta c_{alpha-beta}
  LogJet jet{};
  jet.c[0][0] = emax + std::log(z);
  for (int total = 1; total <= MO; ++total) {
    for (int a = 0; a <= total; ++a) {
      const int b = total - a;
      int pa = a, pb = b;  // alpha' = alpha - e_i, reduce the first coordinate
      if (pa > 0)
        --pa;
      else
        --pb;
      double s = m[a][b];
      for (int ba = 0; ba <= pa; ++ba)
        for (int bb = 0; bb <= pb; ++bb) {
          if (ba == 0 && bb == 0) continue;
          s -= kBinom[pa][ba] * kBinom[pb][bb] * m[ba][bb] *
               jet.c[a - ba][b - bb];
        }
      jet.c[a][b] = s;
    }
  }
  return jet;
}

TauSystem two_soliton_system(const SolitonParams& p) {
  std::vector<ExpTerm> ft = {{0.0, 0, 0},
                             {0.0, 1, 0},
                             {0.0, 0, 1},
                             {p.two_h, 1, 1}};
  std::vector<ExpTerm> gt = {{0.0, 0, 0},
                             {-p.psi1, 1, 0},
                             {-p.psi2, 0, 1},
                             {p.two_h - p.psi1 - p.psi2, 1, 1}};
  TauSystem sys{ExponentialSum(std::move(ft)), ExponentialSum(std::move(gt))};
  sys.k1 = p.k1;
  sys.k2 = p.k2;
  sys.ctilde1 = p.ctilde1;
  sys.ctilde2 = p.ctilde2;
  sys.v1 = -p.k1 * p.ctilde1;
  sys.v2 = -p.k2 * p.ctilde2;
  sys.kappa = p.kappa;
  sys.d = p.d;
  sys.y10 = p.y10;
  sys.y20 = p.y20;
  return sys;
}

TauSystem one_soliton_system(double c, double kappa, double y0, double d) {
  const double k = wavenumber_from_speed(c, kappa);
  const double kk = kappa * k;
  const double ctilde = 2.0 * kappa * kappa * kappa / (1.0 - kk * kk);
  const double psi = -std::log((1.0 - kk) / (1.0 + kk));
  std::vector<ExpTerm> ft = {{0.0, 0, 0}, {0.0, 1, 0}};
  std::vector<ExpTerm> gt = {{0.0, 0, 0}, {-psi, 1, 0}};
  TauSystem sys{ExponentialSum(std::move(ft)), ExponentialSum(std::move(gt))};
  sys.k1 = k;
  sys.k2 = 0.0;
  sys.ctilde1 = ctilde;
  sys.ctilde2 = 0.0;
  sys.v1 = -k * ctilde;
  sys.v2 = 0.0;
  sys.kappa = kappa;
  sys.d = d;
  sys.y10 = y0;
  sys.y20 = 0.0;
  return sys;
}

TauPair tau_pair(const SolitonParams& p) {
  auto sys = two_soliton_system(p);
  return TauPair{std::move(sys.f), std::move(sys.g)};
}

double yt_deriv(const LogJet& jet, const TauSystem& sys, int a, int b) {
  // d/dy = k1 d/dxi1 + k2 d/dxi2 and d/dtau = v1 d/dxi1 + v2 d/dxi2 commute,
  // so the conversion is a double binomial sum.
  double k1p[MO + 1], k2p[MO + 1], v1p[MO + 1], v2p[MO + 1];
  k1p[0] = k2p[0] = v1p[0] = v2p[0] = 1.0;
  for (int i = 1; i <= MO; ++i) {
    k1p[i] = k1p[i - 1] * sys.k1;
    k2p[i] = k2p[i - 1] * sys.k2;
    v1p[i] = v1p[i - 1] * sys.v1;
    v2p[i] = v2p[i - 1] * sys.v2;
  }
  double s = 0.0;
  for (int i = 0; i <= a; ++i)
    for (int j = 0; j <= b; ++j) {
      const double coef = kBinom[a][i] * kBinom[b][j] * k1p[i] * k2p[a - i] *
                          v1p[j] * v2p[b - j];
      if (coef != 0.0) s += coef * jet.c[i + j][(a - i) + (b - j)];
    }
  return s;
}

void product_jet(const double* a, const double* b, double* out, int K) {
  for (int n = 0; n <= K; ++n) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j) s += kBinom[n][j] * a[j] * b[n - j];
    out[n] = s;
  }
}

void reciprocal_jet(const double* p, double* out, int K) {
  out[0] = 1.0 / p[0];
  for (int n = 1; n <= K; ++n) {
    double s = 0.0;
    for (int j = 1; j <= n; ++j) s += kBinom[n][j] * p[j] * out[n - j];
    out[n] = -out[0] * s;
  }
}

}  // namespace mch
