#pragma once

#include <cassert>
#include <cmath>
#include <vector>

#include "hgops/core.hpp"

namespace hgops::detail {

// In-place iterative radix-2 transform, size must be a power of two.
// sign = +1 evaluates sum_k x[k] e^{+2*pi*i*k*m/n} (no 1/n factor),
// sign = -1 is the forward DFT.  Power-of-two sizes are all this library
// needs: sampling densities are lower bounds, so rounding up is free.
inline void fft_pow2(std::vector<cplx>& x, int sign) {
  const std::size_t n = x.size();
  assert((n & (n - 1)) == 0);
  if (n <= 1) return;

  // bit reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * 3.141592653589793238462643383279502884 / static_cast<double>(len);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = x[i + k];
        const cplx v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// Values of the polynomial with coefficients c at the M-th roots of unity
// scaled by radius r: out[m] = sum_k c[k] r^k e^{2 pi i k m / M}.
// M must be a power of two and exceed the effective degree.
inline std::vector<cplx> sample_circle(std::span<const cplx> coeffs, double r, std::size_t M) {
  std::vector<cplx> x(M, cplx(0.0, 0.0));
  double rk = 1.0;
  for (std::size_t k = 0; k < coeffs.size() && k < M; ++k) {
    x[k] = coeffs[k] * rk;
    rk *= r;
  }
  fft_pow2(x, +1);
  return x;
}

// Index of the last coefficient that still matters at radius r, relative to
// the largest scaled term.  Keeps FFT sizes proportional to the mass that is
// actually present at that radius.
inline std::size_t effective_degree(std::span<const cplx> coeffs, double r, double rel_tol = 1e-17) {
  if (coeffs.empty()) return 0;
  double max_term = 0.0;
  {
    double rk = 1.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      max_term = std::max(max_term, std::abs(coeffs[k]) * rk);
      rk *= r;
    }
  }
  if (max_term == 0.0) return 0;
  std::size_t last = 0;
  double rk = 1.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (std::abs(coeffs[k]) * rk > rel_tol * max_term) last = k;
    rk *= r;
  }
  return last;
}

}  // namespace hgops::detail
