#include "mch/fft.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace mch::fft {

namespace {

struct Plan {
  std::vector<std::size_t> bitrev;
  std::vector<cplx> twiddle;  // exp(-i*pi*j/len) tables packed per stage
  explicit Plan(std::size_t n) {
    bitrev.resize(n);
    std::size_t log2n = 0;
    while ((std::size_t{1} << log2n) < n) ++log2n;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < log2n; ++b)
        if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
      bitrev[i] = r;
    }
    twiddle.resize(n);  // stage with half-length m stores m roots at [m..2m)
    for (std::size_t m = 1; m < n; m <<= 1) {
      for (std::size_t j = 0; j < m; ++j) {
        double ang = -std::numbers::pi * static_cast<double>(j) /
                     static_cast<double>(m);
        twiddle[m + j] = cplx{std::cos(ang), std::sin(ang)};
      }
    }
  }
};

const Plan& plan_for(std::size_t n) {
  static std::mutex mtx;
  static std::unordered_map<std::size_t, std::unique_ptr<Plan>> cache;
  std::lock_guard lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, std::make_unique<Plan>(n)).first;
  return *it->second;
}

void transform(std::span<cplx> a, bool inv) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  if (!is_pow2(n)) throw std::invalid_argument("fft: size must be a power of 2");
  const Plan& plan = plan_for(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = plan.bitrev[i];
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t m = 1; m < n; m <<= 1) {
    for (std::size_t k = 0; k < n; k += 2 * m) {
      for (std::size_t j = 0; j < m; ++j) {
        cplx w = plan.twiddle[m + j];
        if (inv) w = std::conj(w);
        cplx t = w * a[k + j + m];
        a[k + j + m] = a[k + j] - t;
        a[k + j] += t;
      }
    }
  }
  if (inv) {
    const double s = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= s;
  }
}

}  // namespace

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void forward(std::span<cplx> data) { transform(data, false); }
void inverse(std::span<cplx> data) { transform(data, true); }

std::vector<double> wavenumbers(std::size_t n, double period) {
  std::vector<double> xi(n);
  const double base = 2.0 * std::numbers::pi / period;
  for (std::size_t k = 0; k < n; ++k) {
    auto sk = static_cast<std::ptrdiff_t>(k);
    if (k >= n / 2) sk -= static_cast<std::ptrdiff_t>(n);
    xi[k] = base * static_cast<double>(sk);
  }
  return xi;
}

std::vector<cplx> spectrum(std::span<const double> v) {
  std::vector<cplx> a(v.begin(), v.end());
  forward(a);
  return a;
}

void apply_symbol(std::span<const double> v, std::span<double> out,
                  double /*period*/, const std::vector<double>& symbol) {
  std::vector<cplx> a(v.begin(), v.end());
  forward(a);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] *= symbol[k];
  inverse(a);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k].real();
}

std::vector<double> derivative(std::span<const double> v, double period,
                               int order) {
  const std::size_t n = v.size();
  std::vector<cplx> a(v.begin(), v.end());
  forward(a);
  const auto xi = wavenumbers(n, period);
  const cplx iunit{0.0, 1.0};
  for (std::size_t k = 0; k < n; ++k) {
    cplx f = 1.0;
    for (int p = 0; p < order; ++p) f *= iunit * xi[k];
    a[k] *= f;
  }
  if (order % 2 == 1) a[n / 2] = 0.0;  // unmatched Nyquist mode
  inverse(a);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k].real();
  return out;
}

std::vector<double> helmholtz_inverse(std::span<const double> v,
                                      double period) {
  const std::size_t n = v.size();
  std::vector<cplx> a(v.begin(), v.end());
  forward(a);
  const auto xi = wavenumbers(n, period);
  for (std::size_t k = 0; k < n; ++k) a[k] /= 1.0 + xi[k] * xi[k];
  inverse(a);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k].real();
  return out;
}

}  // namespace mch::fft
