#pragma once

// Triangle contour integrals in one complex variable: Goursat subdivision,
// Pompeiu's areolar derivative, triangle scans, and Taylor coefficients of
// functions that pass them.

#include "rlab/parallel.hpp"
#include "rlab/torus_fourier.hpp"
#include "rlab/types.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

namespace rlab {

template <typename Real>
struct Triangle {
  std::array<std::complex<Real>, 3> vertices;

  Triangle(std::complex<Real> a, std::complex<Real> b, std::complex<Real> c) : vertices{a, b, c} {
    if (!(signed_area() > 0)) throw PreconditionError("Triangle: vertices must be counterclockwise and non-degenerate");
  }

  /// Orders the vertices counterclockwise.
  static Triangle ccw(std::complex<Real> a, std::complex<Real> b, std::complex<Real> c) {
    const Real s = cross(b - a, c - a);
    if (s == 0) throw PreconditionError("Triangle: degenerate vertices");
    return s > 0 ? Triangle(a, b, c) : Triangle(a, c, b);
  }

  Real signed_area() const { return cross(vertices[1] - vertices[0], vertices[2] - vertices[0]) / 2; }
  Real area() const { return std::abs(signed_area()); }
  Real diameter() const {
    return std::max({std::abs(vertices[1] - vertices[0]), std::abs(vertices[2] - vertices[1]),
                     std::abs(vertices[0] - vertices[2])});
  }
  std::complex<Real> centroid() const { return (vertices[0] + vertices[1] + vertices[2]) / Real(3); }

  bool contains(std::complex<Real> w, Real slack = Real(0)) const {
    for (int k = 0; k < 3; ++k) {
      const auto& a = vertices[static_cast<std::size_t>(k)];
      const auto& b = vertices[static_cast<std::size_t>((k + 1) % 3)];
      if (cross(b - a, w - a) < -slack * std::abs(b - a)) return false;
    }
    return true;
  }

  /// Midpoint subdivision: three corner children, then the central one.
  std::array<Triangle, 4> children() const {
    const auto& [v0, v1, v2] = vertices;
    const auto m01 = (v0 + v1) / Real(2), m12 = (v1 + v2) / Real(2), m20 = (v2 + v0) / Real(2);
    return {Triangle(v0, m01, m20), Triangle(m01, v1, m12), Triangle(m20, m12, v2), Triangle(m12, m20, m01)};
  }

 private:
  static Real cross(std::complex<Real> u, std::complex<Real> v) { return u.real() * v.imag() - u.imag() * v.real(); }
};

template <typename Real>
struct ContourResult {
  std::complex<Real> value;
  /// Sum of |coarse - refined| over accepted panels.
  Real error = 0;
  std::size_t evaluations = 0;
};

namespace quadrature {

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
template <typename Real>
struct GaussLegendre {
  std::vector<Real> nodes, weights;

  explicit GaussLegendre(int order) {
    if (order < 8) throw PreconditionError("Gauss-Legendre order must be >= 8");
    const auto n = static_cast<std::size_t>(order);
    nodes.resize(n);
    weights.resize(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
      long double x = std::cos(std::numbers::pi_v<long double> * (static_cast<long double>(i) + 0.75L) /
                               (static_cast<long double>(n) + 0.5L));
      long double dp = 0;
      for (int iter = 0; iter < 100; ++iter) {
        long double p0 = 1, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
          const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const long double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-19L) break;
      }
      const long double w = 2 / ((1 - x * x) * dp * dp);
      nodes[i] = static_cast<Real>(-x);
      nodes[n - 1 - i] = static_cast<Real>(x);
      weights[i] = weights[n - 1 - i] = static_cast<Real>(w);
    }
  }
};

/// int_0^1 g(t) dt on [t0, t1] with one Gauss-Legendre rule.
template <typename Real, typename G>
std::complex<Real> rule(const GaussLegendre<Real>& gl, G&& g, Real t0, Real t1, Real& fmax) {
  const Real half = (t1 - t0) / 2, mid = (t0 + t1) / 2;
  std::complex<Real> s(0);
  for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
    const std::complex<Real> v = g(mid + half * gl.nodes[k]);
    fmax = std::max(fmax, std::abs(v));
    s += gl.weights[k] * v;
  }
  return s * half;
}

/// Adaptive bisection until coarse and refined rules agree to
/// rel * (t1 - t0) * (1 + max|g|), or the depth limit is hit.
template <typename Real, typename G>
void adaptive(const GaussLegendre<Real>& gl, G&& g, Real t0, Real t1, Real rel, int depth, ContourResult<Real>& out) {
  Real fmax(0);
  const std::complex<Real> coarse = rule(gl, g, t0, t1, fmax);
  const Real mid = (t0 + t1) / 2;
  const std::complex<Real> fine = rule(gl, g, t0, mid, fmax) + rule(gl, g, mid, t1, fmax);
  out.evaluations += 3 * gl.nodes.size();
  const Real diff = std::abs(fine - coarse);
  if (diff <= rel * (t1 - t0) * (1 + fmax) || depth <= 0) {
    out.value += fine;
    out.error += diff;
    return;
  }
  adaptive(gl, g, t0, mid, rel, depth - 1, out);
  adaptive(gl, g, mid, t1, rel, depth - 1, out);
}

template <typename Real>
constexpr Real default_rel() {
  return std::is_same_v<Real, double> ? Real(1e-13) : Real(1e-16);
}

}  // namespace quadrature

struct ContourOptions {
  int nodes_per_edge = 16;
  int max_depth = 40;
};

/// Integral of f(z) dz along the polyline p0 -> p1 -> ... (closed when `closed`).
template <typename Real>
ContourResult<Real> contour_integral(const ScalarFunction<Real>& f, const std::vector<std::complex<Real>>& path,
                                     bool closed, const ContourOptions& opts = {}) {
  if (path.size() < 2) throw PreconditionError("contour_integral: path needs at least two points");
  const quadrature::GaussLegendre<Real> gl(opts.nodes_per_edge);
  ContourResult<Real> out;
  const std::size_t edges = closed ? path.size() : path.size() - 1;
  for (std::size_t e = 0; e < edges; ++e) {
    const std::complex<Real> a = path[e], b = path[(e + 1) % path.size()];
    const std::complex<Real> d = b - a;
    ContourResult<Real> seg;
    quadrature::adaptive(
        gl, [&](Real t) { return f(a + t * d); }, Real(0), Real(1), quadrature::default_rel<Real>(), opts.max_depth,
        seg);
    out.value += seg.value * d;
    out.error += seg.error * std::abs(d);
    out.evaluations += seg.evaluations;
  }
  return out;
}

template <typename Real>
ContourResult<Real> contour_integral(const ScalarFunction<Real>& f, const Triangle<Real>& t,
                                     const ContourOptions& opts = {}) {
  return contour_integral(f, std::vector<std::complex<Real>>(t.vertices.begin(), t.vertices.end()), true, opts);
}

/// Integral of f(z) dz along z = c + r e^{i theta}, theta from theta0 to theta1,
/// in panels of at most pi/4.
template <typename Real>
ContourResult<Real> arc_integral(const ScalarFunction<Real>& f, std::complex<Real> center, Real radius, Real theta0,
                                 Real theta1, const ContourOptions& opts = {}) {
  const quadrature::GaussLegendre<Real> gl(opts.nodes_per_edge);
  ContourResult<Real> out;
  const Real span = theta1 - theta0;
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(span) / (std::numbers::pi_v<Real> / 4))));
  for (int p = 0; p < panels; ++p) {
    const Real a = theta0 + span * Real(p) / Real(panels), b = theta0 + span * Real(p + 1) / Real(panels);
    ContourResult<Real> seg;
    quadrature::adaptive(
        gl,
        [&](Real t) {
          const Real th = a + t * (b - a);
          const std::complex<Real> e = std::polar(Real(1), th);
          return f(center + radius * e) * std::complex<Real>(0, 1) * radius * e;
        },
        Real(0), Real(1), quadrature::default_rel<Real>(), opts.max_depth, seg);
    out.value += seg.value * (b - a);
    out.error += seg.error * std::abs(b - a);
    out.evaluations += seg.evaluations;
  }
  return out;
}

template <typename Real>
struct SubdivisionTrace {
  std::vector<Triangle<Real>> triangles;
  std::vector<std::complex<Real>> integrals;
  /// |integral over T_k| / |T_k|.
  std::vector<Real> ratios;
  /// |I(T_k) - sum of the four child integrals| for each subdivided level.
  std::vector<Real> additivity_residuals;
  std::vector<int> chosen_child;
  bool additivity_ok = true;
  bool terminated_early = false;
  std::complex<Real> witness;
};

/// Repeatedly keeps the child with the largest |contour integral|; a later
/// child displaces the current choice only when larger by a relative 1e-12.
template <typename Real>
SubdivisionTrace<Real> goursat_subdivide(const ScalarFunction<Real>& f, const Triangle<Real>& t0, int depth,
                                         const ContourOptions& opts = {}) {
  if (depth < 1) throw PreconditionError("goursat_subdivide: depth must be >= 1");
  SubdivisionTrace<Real> trace;
  Triangle<Real> current = t0;
  std::complex<Real> integral = contour_integral(f, current, opts).value;
  const Real zero_ratio = Real(1e-12);
  for (int level = 0;; ++level) {
    trace.triangles.push_back(current);
    trace.integrals.push_back(integral);
    trace.ratios.push_back(std::abs(integral) / current.area());
    if (trace.ratios.back() <= zero_ratio) {
      trace.terminated_early = level < depth;
      break;
    }
    if (level == depth) break;
    const auto kids = current.children();
    std::array<std::complex<Real>, 4> sub;
    for (std::size_t k = 0; k < 4; ++k) sub[k] = contour_integral(f, kids[k], opts).value;
    const std::complex<Real> total = sub[0] + sub[1] + sub[2] + sub[3];
    const Real residual = std::abs(integral - total);
    trace.additivity_residuals.push_back(residual);
    if (residual > Real(1e-12) * std::max(Real(1), std::abs(integral))) trace.additivity_ok = false;
    std::size_t best = 0;
    for (std::size_t k = 1; k < 4; ++k)
      if (std::abs(sub[k]) > std::abs(sub[best]) * (1 + Real(1e-12))) best = k;
    trace.chosen_child.push_back(static_cast<int>(best));
    current = kids[best];
    integral = sub[best];
  }
  trace.witness = trace.triangles.back().centroid();
  return trace;
}

template <typename Real>
struct AreolarResult {
  std::complex<Real> value;
  Real error = 0;
  bool converged = false;
  /// q_k = (1/|T_k|) * contour integral over T_k, for h_k = h0 2^-k.
  std::vector<std::complex<Real>> raw;
  std::vector<Real> steps;
};

struct AreolarOptions {
  int shrink_levels = 8;
  double h0 = 0.25;
  double tol = 1e-8;
};

/// Richardson limit of q_k over equilateral triangles (w, w + h, w + h e^{i pi/3}).
template <typename Real>
AreolarResult<Real> areolar_derivative(const ScalarFunction<Real>& f, std::complex<Real> w,
                                       const AreolarOptions& opts = {}) {
  if (opts.shrink_levels < 1) throw PreconditionError("areolar_derivative: need at least two levels");
  AreolarResult<Real> out;
  const std::complex<Real> corner = std::polar(Real(1), std::numbers::pi_v<Real> / 3);
  for (int k = 0; k <= opts.shrink_levels; ++k) {
    const Real h = Real(opts.h0) * std::ldexp(Real(1), -k);
    const Triangle<Real> t(w, w + h, w + h * corner);
    out.raw.push_back(contour_integral(f, t).value / t.area());
    out.steps.push_back(h);
  }
  // Richardson table for an expansion in powers of h with step ratio 2.
  const std::size_t K = out.raw.size();
  std::vector<std::vector<std::complex<Real>>> R(K);
  for (std::size_t k = 0; k < K; ++k) {
    R[k].push_back(out.raw[k]);
    for (std::size_t j = 1; j <= k; ++j) {
      const Real p = std::ldexp(Real(1), static_cast<int>(j));
      R[k].push_back((p * R[k][j - 1] - R[k - 1][j - 1]) / (p - 1));
    }
  }
  Real best = std::numeric_limits<Real>::infinity();
  for (std::size_t k = 1; k < K; ++k) {
    const Real diff = std::abs(R[k][k] - R[k - 1][k - 1]);
    if (diff < best) {
      best = diff;
      out.value = R[k][k];
    }
  }
  out.error = best;
  out.converged = best <= Real(opts.tol) * (1 + std::abs(out.value));
  return out;
}

struct Region {
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
};

template <typename Real>
struct MoreraVerdict {
  bool passed = false;
  Real tolerance = 0;
  Real sup_norm = 0;
  /// Probe nodes where f was not finite; excluded from sup_norm.
  std::size_t nonfinite_samples = 0;
  Real worst_residual = 0;
  std::optional<Triangle<Real>> worst_triangle;
  std::size_t triangles_tested = 0;
  std::optional<SubdivisionTrace<Real>> trace;
};

struct MoreraOptions {
  std::size_t triangle_budget = 256;
  /// Defaults to 1e-8 (1 + sampled sup |f|).
  std::optional<double> tol;
  int goursat_depth = 12;
};

/// Triangle k of the deterministic scan family over a region.
template <typename Real>
Triangle<Real> scan_triangle(const Region& region, std::size_t k) {
  const double w = region.x1 - region.x0, h = region.y1 - region.y0;
  const double side = std::min(w, h);
  const double scale = side * std::ldexp(1.0, -static_cast<int>(k % 4) - 1) * 0.999;
  const double rot = 2 * std::numbers::pi * halton(k + 1, 5);
  const double jitter[3] = {0.0, 0.5 * (halton(k + 1, 7) - 0.5), 0.5 * (halton(k + 1, 11) - 0.5)};
  std::array<std::complex<double>, 3> v;
  double cx = region.x0 + w * halton(k + 1, 2), cy = region.y0 + h * halton(k + 1, 3);
  for (int j = 0; j < 3; ++j) v[static_cast<std::size_t>(j)] = std::polar(scale, rot + 2 * std::numbers::pi * j / 3 + jitter[j]);
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (const auto& p : v) {
    lo_x = std::min(lo_x, p.real());
    hi_x = std::max(hi_x, p.real());
    lo_y = std::min(lo_y, p.imag());
    hi_y = std::max(hi_y, p.imag());
  }
  cx = std::clamp(cx, region.x0 - lo_x, region.x1 - hi_x);
  cy = std::clamp(cy, region.y0 - lo_y, region.y1 - hi_y);
  auto at = [&](int j) {
    const auto p = v[static_cast<std::size_t>(j)] + std::complex<double>(cx, cy);
    return std::complex<Real>(static_cast<Real>(p.real()), static_cast<Real>(p.imag()));
  };
  return Triangle<Real>(at(0), at(1), at(2));
}

/// PASS iff |contour integral| / area <= tol over the whole scan family.
template <typename Real>
MoreraVerdict<Real> morera_test(const ScalarFunction<Real>& f, const Region& region, const MoreraOptions& opts = {}) {
  if (!(region.x1 > region.x0) || !(region.y1 > region.y0)) throw PreconditionError("morera_test: empty region");
  if (opts.triangle_budget == 0) throw PreconditionError("morera_test: triangle budget must be positive");
  MoreraVerdict<Real> v;
  constexpr int kProbe = 33;
  for (int a = 0; a < kProbe; ++a)
    for (int b = 0; b < kProbe; ++b) {
      const std::complex<Real> z(Real(region.x0 + (region.x1 - region.x0) * a / (kProbe - 1)),
                                 Real(region.y0 + (region.y1 - region.y0) * b / (kProbe - 1)));
      const Real m = std::abs(f(z));
      if (std::isfinite(static_cast<double>(m))) {
        v.sup_norm = std::max(v.sup_norm, m);
      } else {
        ++v.nonfinite_samples;
      }
    }
  v.tolerance = opts.tol ? Real(*opts.tol) : Real(1e-8) * (1 + v.sup_norm);
  std::vector<Real> residuals(opts.triangle_budget);
  parallel_for(opts.triangle_budget, [&](std::size_t k) {
    const auto t = scan_triangle<Real>(region, k);
    residuals[k] = std::abs(contour_integral(f, t).value) / t.area();
  });
  std::size_t worst = 0;
  for (std::size_t k = 1; k < residuals.size(); ++k)
    if (residuals[k] > residuals[worst]) worst = k;
  v.triangles_tested = residuals.size();
  v.worst_residual = residuals[worst];
  v.worst_triangle = scan_triangle<Real>(region, worst);
  v.passed = v.worst_residual <= v.tolerance;
  if (!v.passed) v.trace = goursat_subdivide(f, *v.worst_triangle, opts.goursat_depth);
  return v;
}

/// |contour integral of u(|z|) dz| over the boundary of the annular sector
/// {rho < |z| < R, alpha < arg z < beta}, integrated numerically piece by piece.
template <typename Real>
Real sector_identity_residual(const std::function<Real(Real)>& u, Real rho, Real R, Real alpha, Real beta,
                              int nodes = 16) {
  if (!(Real(0) < rho && rho < R && R < Real(1))) throw PreconditionError("sector_identity_residual: need 0 < rho < R < 1");
  if (!(alpha < beta)) throw PreconditionError("sector_identity_residual: need alpha < beta");
  const ScalarFunction<Real> f = [&](std::complex<Real> z) { return std::complex<Real>(u(std::abs(z))); };
  const ContourOptions opts{nodes, 40};
  std::complex<Real> total = arc_integral(f, std::complex<Real>(0), R, alpha, beta, opts).value;
  total += contour_integral(f, {std::polar(R, beta), std::polar(rho, beta)}, false, opts).value;
  total += arc_integral(f, std::complex<Real>(0), rho, beta, alpha, opts).value;
  total += contour_integral(f, {std::polar(rho, alpha), std::polar(R, alpha)}, false, opts).value;
  return std::abs(total);
}

class NegativeModeError : public Error {
 public:
  NegativeModeError(const std::string& what, double residual, std::optional<bool> morera_passed)
      : Error(what), residual_(residual), morera_passed_(morera_passed) {}
  double residual() const { return residual_; }
  std::optional<bool> morera_passed() const { return morera_passed_; }

 private:
  double residual_;
  std::optional<bool> morera_passed_;
};

template <typename Real>
struct TaylorResult {
  std::vector<std::complex<Real>> coefficients;
  /// sqrt(sum over negative modes of |c_n|^2) on the extraction circle.
  Real negative_mode_residual = 0;
  Real radius = 0;
  std::optional<MoreraVerdict<Real>> morera;
};

struct TaylorOptions {
  double radius = 0.9;
  double tol = 1e-12;
  bool run_morera = true;
  Region region{-0.6, 0.6, -0.6, 0.6};
  MoreraOptions morera;
};

/// Taylor coefficients a_0..a_{n_max} of f on the unit disc from the angular
/// spectrum on |z| = radius. Throws NegativeModeError when negative modes
/// carry more than `tol`.
template <typename Real>
TaylorResult<Real> taylor_from_morera(const ScalarFunction<Real>& f, int n_max, std::size_t grid_m,
                                      const TaylorOptions& opts = {}) {
  if (n_max < 0) throw PreconditionError("taylor_from_morera: n_max must be >= 0");
  if (!(opts.radius > 0 && opts.radius < 1)) throw PreconditionError("taylor_from_morera: radius must lie in (0, 1)");
  if (2 * static_cast<std::size_t>(n_max) >= grid_m) throw AliasingError("taylor_from_morera: need grid_m > 2 n_max");
  TaylorResult<Real> out;
  out.radius = Real(opts.radius);
  if (opts.run_morera) out.morera = morera_test(f, opts.region, opts.morera);
  const auto grid = TorusGrid<Real>::uniform(1, grid_m, out.radius);
  const auto s = spectrum(sample<Real>([&](const Point<Real>& z) { return f(z[0]); }, grid));
  for (int k = 0; k <= n_max; ++k) out.coefficients.push_back(s.at({k}) / ipow(out.radius, k));
  Real energy(0);
  for (int k = 1; 2 * static_cast<std::size_t>(k) < grid_m; ++k) energy += std::norm(s.at({-k}));
  out.negative_mode_residual = std::sqrt(energy);
  if (out.negative_mode_residual > Real(opts.tol)) {
    std::optional<bool> passed;
    if (out.morera) passed = out.morera->passed;
    throw NegativeModeError("negative Fourier modes do not vanish (residual " +
                                std::to_string(static_cast<double>(out.negative_mode_residual)) + ")",
                            static_cast<double>(out.negative_mode_residual), passed);
  }
  return out;
}

}  // namespace rlab
