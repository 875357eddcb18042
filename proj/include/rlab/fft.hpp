#pragma once

#include "rlab/parallel.hpp"
#include "rlab/types.hpp"

#include <complex>
#include <numbers>
#include <vector>

namespace rlab::fft {

inline bool is_power_of_two(std::size_t m) { return m >= 1 && (m & (m - 1)) == 0; }

/// Twiddle table w_k = exp(sign * 2 pi i k / m), k < m/2.
template <typename Real>
std::vector<std::complex<Real>> twiddles(std::size_t m, int sign) {
  std::vector<std::complex<Real>> w(m / 2);
  const Real tau = 2 * std::numbers::pi_v<Real>;
  for (std::size_t k = 0; k < w.size(); ++k)
    w[k] = std::polar(Real(1), Real(sign) * tau * Real(k) / Real(m));
  return w;
}

/// Iterative radix-2 transform X_k = sum_l x_l exp(sign 2 pi i k l / m), unnormalized.
template <typename Real>
void transform(std::vector<std::complex<Real>>& x, const std::vector<std::complex<Real>>& w) {
  const std::size_t m = x.size();
  for (std::size_t i = 1, j = 0; i < m; ++i) {
    std::size_t bit = m >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= m; len <<= 1) {
    const std::size_t step = m / len;
    for (std::size_t start = 0; start < m; start += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<Real> u = x[start + k];
        const std::complex<Real> v = x[start + k + len / 2] * w[k * step];
        x[start + k] = u + v;
        x[start + k + len / 2] = u - v;
      }
    }
  }
}

/// Separable n-dimensional transform of an m^n array, coordinate 0 fastest.
template <typename Real>
void transform_nd(std::vector<std::complex<Real>>& data, int n, std::size_t m, int sign) {
  if (!is_power_of_two(m)) throw PreconditionError("fft: length must be a power of two");
  const auto w = twiddles<Real>(m, sign);
  std::size_t stride = 1;
  for (int axis = 0; axis < n; ++axis) {
    const std::size_t lines = data.size() / m;
    parallel_for(lines, [&](std::size_t line) {
      const std::size_t low = line % stride, high = line / stride;
      const std::size_t base = low + high * stride * m;
      std::vector<std::complex<Real>> buf(m);
      for (std::size_t k = 0; k < m; ++k) buf[k] = data[base + k * stride];
      transform(buf, w);
      for (std::size_t k = 0; k < m; ++k) data[base + k * stride] = buf[k];
    });
    stride *= m;
  }
}

}  // namespace rlab::fft
