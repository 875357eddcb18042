#pragma once

// Fourier analysis on polytori {|z_j| = r_j}: uniform trapezoid quadrature on
// every circle, realized through the FFT, plus Fejer/Cesaro summation.

#include "rlab/fft.hpp"
#include "rlab/parallel.hpp"
#include "rlab/types.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace rlab {

template <typename Real>
struct TorusGrid {
  int n = 1;
  std::size_t m = 64;
  VectorX<Real> radii;

  TorusGrid() = default;
  TorusGrid(int n_, std::size_t m_, VectorX<Real> radii_) : n(n_), m(m_), radii(std::move(radii_)) {
    validate();
  }

  static TorusGrid uniform(int n, std::size_t m, Real r = Real(1)) {
    return TorusGrid(n, m, VectorX<Real>::Constant(n, r));
  }

  void validate() const {
    if (n < 1) throw PreconditionError("TorusGrid: dimension must be >= 1");
    if (m < 4 || !fft::is_power_of_two(m)) throw PreconditionError("TorusGrid: m must be a power of two >= 4");
    if (radii.size() != n) throw PreconditionError("TorusGrid: need one radius per coordinate");
    for (Eigen::Index j = 0; j < n; ++j)
      if (!(radii[j] > 0) || !std::isfinite(static_cast<double>(radii[j])))
        throw PreconditionError("TorusGrid: radii must be positive and finite");
  }

  std::size_t size() const {
    std::size_t s = 1;
    for (int j = 0; j < n; ++j) s *= m;
    return s;
  }

  /// Per-coordinate node indices of a flat index (coordinate 0 fastest).
  std::vector<std::size_t> index(std::size_t flat) const {
    std::vector<std::size_t> k(static_cast<std::size_t>(n));
    for (auto& kj : k) {
      kj = flat % m;
      flat /= m;
    }
    return k;
  }

  Real angle(std::size_t k) const { return 2 * std::numbers::pi_v<Real> * Real(k) / Real(m); }

  Point<Real> node(std::size_t flat) const {
    const auto k = index(flat);
    Point<Real> z(n);
    for (int j = 0; j < n; ++j) z[j] = std::polar(radii[j], angle(k[static_cast<std::size_t>(j)]));
    return z;
  }

  /// Flat position of frequency alpha in an FFT-ordered spectrum.
  std::size_t frequency_slot(const MultiIndex& alpha) const {
    std::size_t flat = 0, stride = 1;
    const long long mm = static_cast<long long>(m);
    for (int j = 0; j < n; ++j) {
      const long long a = ((alpha[static_cast<std::size_t>(j)] % mm) + mm) % mm;
      flat += static_cast<std::size_t>(a) * stride;
      stride *= m;
    }
    return flat;
  }

  /// Signed frequency of a spectrum slot, in (-m/2, m/2].
  MultiIndex frequency(std::size_t flat) const {
    MultiIndex alpha(std::vector<int>(static_cast<std::size_t>(n)));
    for (int j = 0; j < n; ++j) {
      const auto k = static_cast<int>(flat % m);
      alpha[static_cast<std::size_t>(j)] = k > static_cast<int>(m / 2) ? k - static_cast<int>(m) : k;
      flat /= m;
    }
    return alpha;
  }
};

template <typename Real>
struct GridFunction {
  TorusGrid<Real> grid;
  std::vector<std::complex<Real>> values;

  void validate() const {
    grid.validate();
    if (values.size() != grid.size()) throw PreconditionError("GridFunction: value count must equal m^n");
    for (const auto& v : values)
      if (!std::isfinite(static_cast<double>(v.real())) || !std::isfinite(static_cast<double>(v.imag())))
        throw EvaluationError("GridFunction: non-finite value");
  }

  /// Discrete seminorm p_r: maximum modulus over the grid nodes.
  Real sup_norm() const {
    Real s(0);
    for (const auto& v : values) s = std::max(s, std::abs(v));
    return s;
  }
};

/// True when |alpha_j| >= m/4 (resolvable, but close to the Nyquist limit).
/// Throws AliasingError when some |alpha_j| >= m/2.
inline bool check_aliasing(const MultiIndex& alpha, std::size_t m) {
  bool warn = false;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    const auto a = static_cast<std::size_t>(std::abs(alpha[j]));
    if (2 * a >= m)
      throw AliasingError("frequency " + to_string(alpha) + " is not resolvable with m = " + std::to_string(m));
    warn = warn || 4 * a >= m;
  }
  return warn;
}

/// Samples f at every node. Evaluator failures become EvaluationError; when
/// `serial` is set the evaluator is never called concurrently.
template <typename Real>
GridFunction<Real> sample(const ComplexFunction<Real>& f, const TorusGrid<Real>& grid, bool serial = false) {
  grid.validate();
  GridFunction<Real> g{grid, std::vector<std::complex<Real>>(grid.size())};
  auto body = [&](std::size_t i) {
    const Point<Real> z = grid.node(i);
    std::complex<Real> v;
    try {
      v = f(z);
    } catch (const std::exception& e) {
      throw EvaluationError(std::string("evaluation failed at a grid node: ") + e.what());
    }
    if (!std::isfinite(static_cast<double>(v.real())) || !std::isfinite(static_cast<double>(v.imag())))
      throw EvaluationError("evaluator returned a non-finite value at a grid node");
    g.values[i] = v;
  };
  if (serial) {
    for (std::size_t i = 0; i < grid.size(); ++i) body(i);
  } else {
    parallel_for(grid.size(), body);
  }
  return g;
}

/// Angular Fourier coefficients c_alpha = (1/m^n) sum_k f(node_k) exp(-i<alpha, theta_k>),
/// stored in FFT order.
template <typename Real>
struct Spectrum {
  TorusGrid<Real> grid;
  std::vector<std::complex<Real>> coefficients;

  std::complex<Real> at(const MultiIndex& alpha) const {
    if (alpha.size() != static_cast<std::size_t>(grid.n)) throw PreconditionError("Spectrum: dimension mismatch");
    check_aliasing(alpha, grid.m);
    return coefficients[grid.frequency_slot(alpha)];
  }
};

template <typename Real>
Spectrum<Real> spectrum(const GridFunction<Real>& g) {
  g.validate();
  Spectrum<Real> s{g.grid, g.values};
  fft::transform_nd(s.coefficients, g.grid.n, g.grid.m, -1);
  const Real scale = Real(1) / Real(g.grid.size());
  for (auto& c : s.coefficients) c *= scale;
  return s;
}

/// Values on the grid of sum_alpha weight(alpha) c_alpha exp(i<alpha, theta>).
template <typename Real, typename Weight>
GridFunction<Real> synthesize(const Spectrum<Real>& s, Weight&& weight) {
  std::vector<std::complex<Real>> data(s.coefficients.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Real w = weight(s.grid.frequency(i));
    data[i] = w == Real(0) ? std::complex<Real>(0) : w * s.coefficients[i];
  }
  fft::transform_nd(data, s.grid.n, s.grid.m, +1);
  return {s.grid, std::move(data)};
}

template <typename Real>
struct FourierComponent {
  MultiIndex alpha;
  /// Angular coefficient c_alpha; the component is c_alpha exp(i<alpha, theta>).
  std::complex<Real> coefficient;
  GridFunction<Real> values;
  /// max over nodes and coordinate steps of |g(mu_j z) - mu_j^alpha_j g(z)|.
  Real equivariance_residual = 0;
  bool aliasing_warning = false;
};

namespace detail {

template <typename Real>
Real equivariance_residual(const GridFunction<Real>& g, const MultiIndex& alpha) {
  const auto& grid = g.grid;
  Real worst(0);
  std::size_t stride = 1;
  for (int j = 0; j < grid.n; ++j) {
    const std::complex<Real> mu = std::polar(
        Real(1), 2 * std::numbers::pi_v<Real> * Real(alpha[static_cast<std::size_t>(j)]) / Real(grid.m));
    for (std::size_t i = 0; i < g.values.size(); ++i) {
      const std::size_t kj = (i / stride) % grid.m;
      const std::size_t shifted = i + ((kj + 1) % grid.m) * stride - kj * stride;
      worst = std::max(worst, std::abs(g.values[shifted] - mu * g.values[i]));
    }
    stride *= grid.m;
  }
  return worst;
}

}  // namespace detail

/// Component of an already sampled function.
template <typename Real>
FourierComponent<Real> fourier_component(const Spectrum<Real>& s, const MultiIndex& alpha) {
  FourierComponent<Real> out;
  out.alpha = alpha;
  out.aliasing_warning = check_aliasing(alpha, s.grid.m);
  out.coefficient = s.at(alpha);
  const auto& grid = s.grid;
  // Phase index <alpha, k> mod m keeps node permutations exact.
  std::vector<std::complex<Real>> unit(grid.m);
  for (std::size_t p = 0; p < grid.m; ++p) unit[p] = std::polar(Real(1), grid.angle(p));
  out.values = GridFunction<Real>{grid, std::vector<std::complex<Real>>(grid.size())};
  const long long mm = static_cast<long long>(grid.m);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto k = grid.index(i);
    long long phase = 0;
    for (int j = 0; j < grid.n; ++j)
      phase += static_cast<long long>(alpha[static_cast<std::size_t>(j)]) * static_cast<long long>(k[static_cast<std::size_t>(j)]);
    out.values.values[i] = out.coefficient * unit[static_cast<std::size_t>(((phase % mm) + mm) % mm)];
  }
  out.equivariance_residual = detail::equivariance_residual(out.values, alpha);
  return out;
}

template <typename Real>
FourierComponent<Real> fourier_component(const GridFunction<Real>& g, const MultiIndex& alpha) {
  if (alpha.size() != static_cast<std::size_t>(g.grid.n)) throw PreconditionError("fourier_component: dimension mismatch");
  check_aliasing(alpha, g.grid.m);
  return fourier_component(spectrum(g), alpha);
}

template <typename Real>
FourierComponent<Real> fourier_component(const ComplexFunction<Real>& f, const MultiIndex& alpha,
                                         const TorusGrid<Real>& grid) {
  if (alpha.size() != static_cast<std::size_t>(grid.n)) throw PreconditionError("fourier_component: dimension mismatch");
  check_aliasing(alpha, grid.m);
  return fourier_component(sample(f, grid), alpha);
}

/// S_k f: the sum of all components with |alpha|_inf <= k.
template <typename Real>
GridFunction<Real> square_partial_sum(const Spectrum<Real>& s, int k) {
  if (k < 0) throw PreconditionError("square_partial_sum: k must be >= 0");
  if (2 * static_cast<std::size_t>(k) >= s.grid.m)
    throw AliasingError("square_partial_sum: need m > 2k (k = " + std::to_string(k) + ")");
  return synthesize(s, [k](const MultiIndex& a) { return a.linf() <= k ? Real(1) : Real(0); });
}

template <typename Real>
GridFunction<Real> square_partial_sum(const GridFunction<Real>& g, int k) {
  return square_partial_sum(spectrum(g), k);
}

template <typename Real>
GridFunction<Real> square_partial_sum(const ComplexFunction<Real>& f, int k, const TorusGrid<Real>& grid) {
  return square_partial_sum(sample(f, grid), k);
}

/// Fejer kernel F_N at the angles theta. For one variable this is the closed
/// form sin^2((N+1)t/2) / ((N+1) sin^2(t/2)); in several variables it is the
/// kernel of the Cesaro mean of square partial sums,
/// (1/(N+1)) sum_{k<=N} prod_j D_k(theta_j), which is not a product of
/// one-variable Fejer kernels and takes negative values.
template <typename Real>
Real fejer_kernel(int N, const std::vector<Real>& theta) {
  if (N < 0) throw PreconditionError("fejer_kernel: N must be >= 0");
  if (theta.empty()) throw PreconditionError("fejer_kernel: need at least one angle");
  const Real two_pi = 2 * std::numbers::pi_v<Real>;
  std::vector<Real> t(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) t[j] = std::remainder(theta[j], two_pi);
  const Real n1 = Real(N + 1);
  if (theta.size() == 1) {
    if (std::abs(t[0]) < Real(1e-8)) return n1;
    const Real s = std::sin(n1 * t[0] / 2) / std::sin(t[0] / 2);
    return s * s / n1;
  }
  auto dirichlet = [](int k, Real x) {
    if (std::abs(x) < Real(1e-8)) return Real(2 * k + 1);
    return std::sin((Real(k) + Real(0.5)) * x) / std::sin(x / 2);
  };
  Real sum(0);
  for (int k = 0; k <= N; ++k) {
    Real prod(1);
    for (Real x : t) prod *= dirichlet(k, x);
    sum += prod;
  }
  return sum / n1;
}

/// C_N f = (1/(N+1)) sum_{k<=N} S_k f.
template <typename Real>
GridFunction<Real> cesaro_fejer_sum(const GridFunction<Real>& g, int N) {
  if (N < 0) throw PreconditionError("cesaro_fejer_sum: N must be >= 0");
  if (2 * static_cast<std::size_t>(N) >= g.grid.m)
    throw AliasingError("cesaro_fejer_sum: need m > 2N (N = " + std::to_string(N) + ")");
  const auto s = spectrum(g);
  GridFunction<Real> acc{g.grid, std::vector<std::complex<Real>>(g.grid.size())};
  for (int k = 0; k <= N; ++k) {
    const auto part = square_partial_sum(s, k);
    for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += part.values[i];
  }
  for (auto& v : acc.values) v /= Real(N + 1);
  return acc;
}

template <typename Real>
GridFunction<Real> cesaro_fejer_sum(const ComplexFunction<Real>& f, int N, const TorusGrid<Real>& grid) {
  return cesaro_fejer_sum(sample(f, grid), N);
}

/// C_N f at the nodes as the discrete convolution (1/m^n) sum_l F_N(theta_l) f(node_{k+l}).
template <typename Real>
GridFunction<Real> cesaro_fejer_convolution(const GridFunction<Real>& g, int N) {
  if (N < 0) throw PreconditionError("cesaro_fejer_convolution: N must be >= 0");
  if (2 * static_cast<std::size_t>(N) >= g.grid.m)
    throw AliasingError("cesaro_fejer_convolution: need m > 2N (N = " + std::to_string(N) + ")");
  g.validate();
  const auto& grid = g.grid;
  const std::size_t size = grid.size();
  std::vector<Real> kernel(size);
  parallel_for(size, [&](std::size_t l) {
    const auto k = grid.index(l);
    std::vector<Real> theta(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) theta[j] = grid.angle(k[j]);
    kernel[l] = fejer_kernel(N, theta);
  });
  GridFunction<Real> out{grid, std::vector<std::complex<Real>>(size)};
  const Real scale = Real(1) / Real(size);
  parallel_for(size, [&](std::size_t i) {
    const auto ki = grid.index(i);
    std::complex<Real> acc(0);
    for (std::size_t l = 0; l < size; ++l) {
      std::size_t flat = 0, stride = 1;
      std::size_t rem = l;
      for (int j = 0; j < grid.n; ++j) {
        flat += ((ki[static_cast<std::size_t>(j)] + rem % grid.m) % grid.m) * stride;
        rem /= grid.m;
        stride *= grid.m;
      }
      acc += kernel[l] * g.values[flat];
    }
    out.values[i] = acc * scale;
  });
  return out;
}

/// C_n = (1/(n+1)) sum_{k<=n} S_k.
template <typename T>
std::vector<T> cesaro_means(const std::vector<T>& partial_sums) {
  if (partial_sums.empty()) throw PreconditionError("cesaro_means: empty sequence");
  std::vector<T> out;
  out.reserve(partial_sums.size());
  T running = partial_sums[0] - partial_sums[0];
  for (std::size_t k = 0; k < partial_sums.size(); ++k) {
    running += partial_sums[k];
    out.push_back(running / static_cast<double>(k + 1));
  }
  return out;
}

template <typename Real>
struct CauchyReport {
  /// max over tested radii and alpha of |c_alpha| - p_r(f), clipped at 0.
  Real max_violation = 0;
  /// max of |c_alpha| / p_r(f).
  Real max_ratio = 0;
  MultiIndex worst_alpha;
  std::size_t worst_radius = 0;
  std::size_t checks = 0;
  std::vector<Real> sup_norms;
};

/// Checks |c_alpha| <= p_r(f) (the discrete sup over the torus of radii r) for
/// every alpha in the box and every radius vector in `radii`.
template <typename Real>
CauchyReport<Real> cauchy_inequality_check(const ComplexFunction<Real>& f, int alpha_box, const TorusGrid<Real>& grid,
                                           const std::vector<VectorX<Real>>& radii) {
  if (alpha_box < 0) throw PreconditionError("cauchy_inequality_check: alpha_box must be >= 0");
  if (2 * static_cast<std::size_t>(alpha_box) >= grid.m)
    throw AliasingError("cauchy_inequality_check: need m > 2 alpha_box");
  CauchyReport<Real> report;
  const auto box = index_box(static_cast<std::size_t>(grid.n), alpha_box);
  for (std::size_t r = 0; r < radii.size(); ++r) {
    const TorusGrid<Real> g(grid.n, grid.m, radii[r]);
    const auto values = sample(f, g);
    const Real p = values.sup_norm();
    report.sup_norms.push_back(p);
    const auto s = spectrum(values);
    for (const auto& alpha : box) {
      const Real c = std::abs(s.at(alpha));
      const Real violation = std::max(Real(0), c - p);
      const Real ratio = p > 0 ? c / p : (c > 0 ? Real(INFINITY) : Real(0));
      if (report.checks == 0 || violation > report.max_violation) {
        report.max_violation = violation;
        report.worst_alpha = alpha;
        report.worst_radius = r;
      }
      report.max_ratio = std::max(report.max_ratio, ratio);
      ++report.checks;
    }
  }
  return report;
}

}  // namespace rlab
