#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mch::fft {

using cplx = std::complex<double>;

bool is_pow2(std::size_t n);

// In-place radix-2 transforms. n must be a power of two.
// forward: X_k = sum_j x_j exp(-2*pi*i*j*k/n); inverse includes the 1/n.
void forward(std::span<cplx> data);
void inverse(std::span<cplx> data);

// Signed wavenumbers xi_k = 2*pi*k~/period in FFT storage order
// (k~ = k for k < n/2, k - n otherwise).
std::vector<double> wavenumbers(std::size_t n, double period);

// Spectrum of a real sequence (complex transform of the real input).
std::vector<cplx> spectrum(std::span<const double> v);

// Apply a real multiplier sym(xi) in Fourier space: out_j = F^-1[sym * F v].
void apply_symbol(std::span<const double> v, std::span<double> out,
                  double period, const std::vector<double>& symbol);

// d^order/dx^order by spectral differentiation on a periodic grid.
std::vector<double> derivative(std::span<const double> v, double period,
                               int order);

// (1 - d^2/dx^2)^-1 applied on a periodic grid.
std::vector<double> helmholtz_inverse(std::span<const double> v, double period);

}  // namespace mch::fft
