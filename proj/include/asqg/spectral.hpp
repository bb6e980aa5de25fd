#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace asqg::spectral {

using cplx = std::complex<double>;

/// c_k = (1/M) sum_j x_j exp(-2 pi i j k / M), k in FFT order.
std::vector<cplx> forward(const std::vector<cplx>& samples);

/// x_j = sum_k c_k exp(2 pi i j k / M); inverse of forward().
std::vector<cplx> inverse(const std::vector<cplx>& coeffs);

/// Signed wavenumber of FFT slot k; the Nyquist slot M/2 maps to +M/2.
inline long wavenumber(std::size_t k, std::size_t M) {
  return k <= M / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(M);
}

/// Real multiplier applied slot by slot: c_k <- c_k * f(wavenumber).
template <class F>
void apply_multiplier(std::vector<cplx>& coeffs, F&& f) {
  const std::size_t M = coeffs.size();
  for (std::size_t k = 0; k < M; ++k) coeffs[k] *= f(wavenumber(k, M));
}

}  // namespace asqg::spectral
