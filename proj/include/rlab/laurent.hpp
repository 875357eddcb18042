#pragma once

// Laurent expansions of holomorphic functions on Reinhardt domains:
// coefficient extraction on a polytorus, evaluation on the envelope, and
// missing-monomial verdicts for constrained function spaces.

#include "rlab/domains.hpp"
#include "rlab/parallel.hpp"
#include "rlab/torus_fourier.hpp"
#include "rlab/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <vector>

namespace rlab {

template <typename Real>
struct LaurentSeries {
  int dimension = 0;
  std::map<MultiIndex, std::complex<Real>, ShellOrder> coefficients;
  VectorX<Real> extraction_radii;
  std::size_t grid_m = 0;
  int alpha_box = 0;
  /// Extrapolated sum of dropped |a_alpha| r^alpha on the extraction torus.
  Real tail_bound = 0;

  /// Angular coefficients below this were snapped to zero.
  Real noise_floor = 0;
  /// Sup of |f| over the extraction torus nodes.
  Real sup_norm = 0;
  /// Three-radius holomorphy certificate (scaled by max(1, sup_norm)).
  Real holomorphy_residual = 0;
  std::vector<VectorX<Real>> probe_radii;
  bool holomorphic = true;
  /// Largest relative angular coefficient found at an exponent that is not
  /// smooth through a coordinate hyperplane met by the domain.
  Real missing_monomial_residual = 0;
  bool missing_monomial_violation = false;
  std::size_t zeroed_count = 0;

  std::complex<Real> coefficient(const MultiIndex& alpha) const {
    const auto it = coefficients.find(alpha);
    return it == coefficients.end() ? std::complex<Real>(0) : it->second;
  }
};

struct ExtractionOptions {
  /// Extraction radii; defaults to exp of the extraction ball center.
  std::optional<std::vector<double>> radii;
  bool serial_evaluator = false;
  bool holomorphy_probe = true;
  double holomorphy_threshold = 1e-8;
  double missing_monomial_tol = 1e-9;
};

template <typename Real>
struct SeriesValue {
  std::complex<Real> value;
  Real tail_bound = 0;
  Real ratio = 0;
  bool divergent = false;
  /// Divergent, or the tail estimate exceeds the tolerance.
  bool flagged = false;
};

namespace detail {

template <typename Real>
Point<double> radii_point(const VectorX<Real>& r) {
  Point<double> z(r.size());
  for (Eigen::Index j = 0; j < r.size(); ++j) z[j] = static_cast<double>(r[j]);
  return z;
}

/// Geometric extrapolation of shell sums s_k (k = 0..B) beyond B.
template <typename Real>
SeriesValue<Real> shell_tail(const std::vector<Real>& shells, Real tol) {
  SeriesValue<Real> out;
  const int B = static_cast<int>(shells.size()) - 1;
  std::vector<int> nonzero;
  for (int k = 0; k <= B; ++k)
    if (shells[static_cast<std::size_t>(k)] > 0) nonzero.push_back(k);
  // A spectrum that stops well inside the box has no tail.
  if (nonzero.size() < 2 || nonzero.back() < B - 2) return out;
  const std::size_t t = nonzero.size();
  const std::size_t first = t >= 3 ? t - 3 : t - 2;
  Real q(0);
  for (std::size_t i = first; i + 1 < t; ++i) {
    const int k0 = nonzero[i], k1 = nonzero[i + 1];
    const Real ratio = shells[static_cast<std::size_t>(k1)] / shells[static_cast<std::size_t>(k0)];
    q = std::max(q, std::pow(ratio, Real(1) / Real(k1 - k0)));
  }
  out.ratio = q;
  const int k_last = nonzero.back();
  if (q >= 1) {
    out.divergent = true;
    out.flagged = true;
    out.tail_bound = std::numeric_limits<Real>::infinity();
    return out;
  }
  out.tail_bound = shells[static_cast<std::size_t>(k_last)] * std::pow(q, Real(B + 1 - k_last)) / (1 - q);
  out.flagged = out.tail_bound > tol;
  return out;
}

template <typename Real>
std::vector<Real> shell_sums(const LaurentSeries<Real>& s, const VectorX<Real>& radii) {
  std::vector<Real> shells(static_cast<std::size_t>(s.alpha_box) + 1, Real(0));
  for (const auto& [alpha, a] : s.coefficients) {
    const auto k = static_cast<std::size_t>(alpha.linf());
    if (k < shells.size()) shells[k] += std::abs(a) * monomial_modulus(alpha, radii);
  }
  return shells;
}

template <typename Real>
std::map<MultiIndex, std::complex<Real>, ShellOrder> raw_coefficients(const Spectrum<Real>& s, int alpha_box) {
  std::map<MultiIndex, std::complex<Real>, ShellOrder> out;
  for (const auto& alpha : index_box(static_cast<std::size_t>(s.grid.n), alpha_box))
    out.emplace(alpha, s.at(alpha) / monomial_modulus(alpha, s.grid.radii));
  return out;
}

}  // namespace detail

/// a_alpha(r) = c_alpha(r) / r^alpha for every alpha in the box.
template <typename Real>
std::map<MultiIndex, std::complex<Real>, ShellOrder> coefficients_at(const ComplexFunction<Real>& f,
                                                                      const VectorX<Real>& radii, int alpha_box,
                                                                      std::size_t grid_m, bool serial = false) {
  if (alpha_box < 0) throw PreconditionError("alpha_box must be >= 0");
  if (2 * static_cast<std::size_t>(alpha_box) >= grid_m)
    throw AliasingError("grid_m must exceed 2 * alpha_box");
  const TorusGrid<Real> grid(static_cast<int>(radii.size()), grid_m, radii);
  return detail::raw_coefficients(spectrum(sample(f, grid, serial)), alpha_box);
}

template <typename Real>
LaurentSeries<Real> laurent_coefficients(const ComplexFunction<Real>& f, const ReinhardtDomain& domain, int alpha_box,
                                         std::size_t grid_m, const ExtractionOptions& opts = {}) {
  const int n = domain.dimension();
  if (alpha_box < 0) throw PreconditionError("laurent_coefficients: alpha_box must be >= 0");
  if (2 * static_cast<std::size_t>(alpha_box) >= grid_m)
    throw AliasingError("laurent_coefficients: grid_m must exceed 2 * alpha_box");

  LaurentSeries<Real> s;
  s.dimension = n;
  s.grid_m = grid_m;
  s.alpha_box = alpha_box;

  Eigen::VectorXd log_center;
  double probe_step = 0;
  if (opts.radii) {
    if (static_cast<int>(opts.radii->size()) != n) throw PreconditionError("laurent_coefficients: radii dimension");
    log_center.resize(n);
    for (int j = 0; j < n; ++j) {
      if (!((*opts.radii)[static_cast<std::size_t>(j)] > 0))
        throw PreconditionError("laurent_coefficients: radii must be positive");
      log_center[j] = std::log((*opts.radii)[static_cast<std::size_t>(j)]);
    }
    probe_step = 0.5 * extraction_ball(domain).radius;
  } else {
    const auto ball = extraction_ball(domain);
    log_center = ball.center;
    probe_step = 0.5 * ball.radius;
  }
  s.extraction_radii.resize(n);
  for (int j = 0; j < n; ++j) s.extraction_radii[j] = std::exp(static_cast<Real>(log_center[j]));
  if (!contains(domain, detail::radii_point(s.extraction_radii)))
    throw PreconditionError("laurent_coefficients: extraction torus is not inside the domain");

  const TorusGrid<Real> grid(n, grid_m, s.extraction_radii);
  const auto values = sample(f, grid, opts.serial_evaluator);
  s.sup_norm = values.sup_norm();
  const auto spec = spectrum(values);
  s.noise_floor = 64 * std::numeric_limits<Real>::epsilon() * s.sup_norm;

  for (const auto& alpha : index_box(static_cast<std::size_t>(n), alpha_box)) {
    const std::complex<Real> c = spec.at(alpha);
    bool smooth = true;
    for (int j = 0; j < n; ++j)
      smooth = smooth && !(domain.axis_flags()[static_cast<std::size_t>(j)] && alpha[static_cast<std::size_t>(j)] < 0);
    if (!smooth) {
      s.missing_monomial_residual =
          std::max(s.missing_monomial_residual, std::abs(c) / std::max(Real(1), s.sup_norm));
      ++s.zeroed_count;
      s.coefficients.emplace(alpha, std::complex<Real>(0));
      continue;
    }
    if (std::abs(c) <= s.noise_floor) {
      s.coefficients.emplace(alpha, std::complex<Real>(0));
      continue;
    }
    s.coefficients.emplace(alpha, c / monomial_modulus(alpha, s.extraction_radii));
  }
  s.missing_monomial_violation = s.missing_monomial_residual > Real(opts.missing_monomial_tol);

  const auto tail = detail::shell_tail(detail::shell_sums(s, s.extraction_radii), Real(0));
  s.tail_bound = tail.divergent ? std::numeric_limits<Real>::infinity() : tail.tail_bound;

  if (opts.holomorphy_probe) {
    const double unit = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<VectorX<Real>> probes;
    for (double t : {-0.5, 0.0, 0.5}) {
      VectorX<Real> r(n);
      for (int j = 0; j < n; ++j) r[j] = std::exp(static_cast<Real>(log_center[j] + 2 * t * probe_step * unit));
      if (t == 0.0 || contains(domain, detail::radii_point(r))) probes.push_back(r);
    }
    s.probe_radii = probes;
    std::vector<std::map<MultiIndex, std::complex<Real>, ShellOrder>> coeffs;
    for (const auto& r : probes) {
      if (r == s.extraction_radii) {
        coeffs.push_back(detail::raw_coefficients(spec, alpha_box));
      } else {
        coeffs.push_back(coefficients_at(f, r, alpha_box, grid_m, opts.serial_evaluator));
      }
    }
    Real worst(0);
    for (std::size_t a = 0; a < probes.size(); ++a)
      for (std::size_t b = a + 1; b < probes.size(); ++b)
        for (const auto& [alpha, ca] : coeffs[a]) {
          const Real scale =
              std::min(monomial_modulus(alpha, probes[a]), monomial_modulus(alpha, probes[b]));
          worst = std::max(worst, std::abs(ca - coeffs[b].at(alpha)) * scale);
        }
    s.holomorphy_residual = worst / std::max(Real(1), s.sup_norm);
    s.holomorphic = s.holomorphy_residual <= Real(opts.holomorphy_threshold);
  }
  return s;
}

/// Max pairwise |a_alpha(r) - a_alpha(r')| over the given radius vectors.
template <typename Real>
Real radius_independence_residual(const ComplexFunction<Real>& f, const ReinhardtDomain& domain,
                                  const MultiIndex& alpha, const std::vector<VectorX<Real>>& radii_list,
                                  std::size_t grid_m) {
  if (radii_list.size() < 2) throw PreconditionError("radius_independence_residual: need at least two radii");
  if (alpha.size() != static_cast<std::size_t>(domain.dimension()))
    throw PreconditionError("radius_independence_residual: dimension mismatch");
  check_aliasing(alpha, grid_m);
  std::vector<std::complex<Real>> a;
  for (const auto& r : radii_list) {
    if (r.size() != domain.dimension()) throw PreconditionError("radius_independence_residual: radii dimension");
    if (!contains(domain, detail::radii_point(r)))
      throw PreconditionError("radius_independence_residual: torus not inside the domain");
    const TorusGrid<Real> grid(domain.dimension(), grid_m, r);
    a.push_back(spectrum(sample(f, grid)).at(alpha) / monomial_modulus(alpha, r));
  }
  Real worst(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) worst = std::max(worst, std::abs(a[i] - a[j]));
  return worst;
}

/// Sum of a_alpha z^alpha in shell order, with a geometric tail estimate.
template <typename Real>
SeriesValue<Real> evaluate_series(const LaurentSeries<Real>& s, const Point<Real>& z, const ReinhardtDomain& domain_hat,
                                  Real tol = Real(1e-8)) {
  if (z.size() != s.dimension || domain_hat.dimension() != s.dimension)
    throw PreconditionError("evaluate_series: dimension mismatch");
  Point<double> zd(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j)
    zd[j] = std::complex<double>(static_cast<double>(z[j].real()), static_cast<double>(z[j].imag()));
  if (!contains(domain_hat, zd)) throw PreconditionError("evaluate_series: point is not inside the domain");

  VectorX<Real> modulus(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) modulus[j] = std::abs(z[j]);
  std::vector<Real> shells(static_cast<std::size_t>(s.alpha_box) + 1, Real(0));
  std::complex<Real> sum(0);
  for (const auto& [alpha, a] : s.coefficients) {
    if (a == std::complex<Real>(0)) continue;
    const std::complex<Real> term = a * monomial(alpha, z);
    sum += term;
    const auto k = static_cast<std::size_t>(alpha.linf());
    if (k < shells.size()) shells[k] += std::abs(term);
  }
  auto out = detail::shell_tail(shells, tol);
  out.value = sum;
  return out;
}

template <typename Real>
struct DecayRow {
  MultiIndex alpha;
  int order = 0;
  Real seminorm = 0;
};

template <typename Real>
struct DecayReport {
  std::vector<DecayRow<Real>> rows;
  /// -slope of the least-squares fit of log(max seminorm at order k) against k.
  Real decay_rate = 0;
  /// Local decay rates grow along the sequence (faster than any geometric rate).
  bool super_geometric = false;
  /// All seminorms vanish beyond some order inside the box.
  bool finite_support = false;
  int last_nonzero_order = -1;
};

/// p_K(a_alpha e_alpha) = |a_alpha| prod_j K_j^alpha_j, ordered by |alpha|_1.
template <typename Real>
DecayReport<Real> coefficient_decay_report(const LaurentSeries<Real>& s, const VectorX<Real>& K) {
  if (K.size() != s.dimension) throw PreconditionError("coefficient_decay_report: dimension mismatch");
  for (Eigen::Index j = 0; j < K.size(); ++j)
    if (!(K[j] > 0)) throw PreconditionError("coefficient_decay_report: radii must be positive");
  DecayReport<Real> r;
  int max_order = 0;
  for (const auto& [alpha, a] : s.coefficients) {
    r.rows.push_back({alpha, alpha.l1(), std::abs(a) * monomial_modulus(alpha, K)});
    max_order = std::max(max_order, alpha.l1());
  }
  std::stable_sort(r.rows.begin(), r.rows.end(), [](const auto& a, const auto& b) { return a.order < b.order; });
  std::vector<Real> envelope(static_cast<std::size_t>(max_order) + 1, Real(0));
  for (const auto& row : r.rows)
    envelope[static_cast<std::size_t>(row.order)] = std::max(envelope[static_cast<std::size_t>(row.order)], row.seminorm);
  std::vector<std::pair<Real, Real>> pts;
  for (std::size_t k = 0; k < envelope.size(); ++k) {
    if (envelope[k] > 0) {
      pts.push_back({Real(k), std::log(envelope[k])});
      r.last_nonzero_order = static_cast<int>(k);
    }
  }
  // Orders beyond |alpha|_inf = alpha_box are only partially covered by the box.
  const int complete = s.alpha_box;
  r.finite_support = r.last_nonzero_order >= 0 && r.last_nonzero_order < complete;
  std::erase_if(pts, [&](const auto& p) { return p.first > Real(complete); });
  if (pts.size() >= 2) {
    Real mx = 0, my = 0;
    for (const auto& [x, y] : pts) {
      mx += x;
      my += y;
    }
    mx /= Real(pts.size());
    my /= Real(pts.size());
    Real sxy = 0, sxx = 0;
    for (const auto& [x, y] : pts) {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
    r.decay_rate = -sxy / sxx;
  }
  if (pts.size() >= 6) {
    const std::size_t third = pts.size() / 3;
    auto rate = [&](std::size_t a, std::size_t b) { return -(pts[b].second - pts[a].second) / (pts[b].first - pts[a].first); };
    const Real early = rate(0, third), late = rate(pts.size() - 1 - third, pts.size() - 1);
    r.super_geometric = late > Real(1.25) * early && late > 0;
  }
  return r;
}

/// prod_j (1/m) sum_k (z_j + rho_j e^{2 pi i k/m})^{alpha_j}: the circle means of e_alpha.
/// Exact for 0 <= alpha_j < m; for alpha_j < 0 the node sum misses z_j^alpha_j by about
/// binom(m - alpha_j - 1, -alpha_j - 1) (rho_j / |z_j|)^m.
template <typename Real>
std::complex<Real> circle_average(const MultiIndex& alpha, const Point<Real>& z, const VectorX<Real>& rho,
                                  std::size_t grid_m) {
  if (alpha.size() != static_cast<std::size_t>(z.size()) || rho.size() != z.size())
    throw PreconditionError("circle_average: dimension mismatch");
  if (grid_m < 4) throw PreconditionError("circle_average: grid_m must be >= 4");
  std::complex<Real> product(1);
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    const int a = alpha[static_cast<std::size_t>(j)];
    if (!(rho[j] >= 0)) throw PreconditionError("circle_average: radii must be nonnegative");
    if (a < 0 && !(rho[j] < std::abs(z[j])))
      throw PreconditionError("circle_average: negative exponent needs rho_j < |z_j|");
    std::vector<std::complex<Real>> terms(grid_m);
    for (std::size_t k = 0; k < grid_m; ++k) {
      const Real t = 2 * std::numbers::pi_v<Real> * Real(k) / Real(grid_m);
      terms[k] = ipow(z[j] + std::polar(rho[j], t), a);
    }
    product *= pairwise_sum(terms) / Real(grid_m);
  }
  return product;
}

// ---------------------------------------------------------------------------
// Missing monomials

/// Weight lambda(r) on radii; `power` marks lambda = prod_j r_j^power_j, which
/// admits an exact integrability decision.
struct BergmanWeight {
  double p = 2.0;
  std::function<double(const Eigen::VectorXd&)> radial_weight;
  std::optional<std::vector<double>> power;

  static BergmanWeight unweighted(double p, int n);
  static BergmanWeight power_law(double p, std::vector<double> exponents);
};

enum class Integrability { Integrable, Divergent, Indeterminate };

const char* to_string(Integrability v);

struct BergmanVerdict {
  std::vector<MultiIndex> integrable;
  std::vector<std::pair<MultiIndex, Integrability>> verdicts;
  /// "exact" (recession-cone test) or "numeric" (nested-box refinement).
  std::string method;
  std::size_t indeterminate = 0;
};

/// {alpha in box : int_Omega |z^alpha|^p lambda dV < infinity}.
BergmanVerdict missing_monomials_bergman(const ReinhardtDomain& domain, const BergmanWeight& weight, int alpha_box);

struct SmoothBoundaryConstraint {
  /// Coordinates j for which only alpha_j >= 0 survive.
  std::vector<bool> nonnegative;
  std::vector<MultiIndex> allowed;
};

struct SmoothBoundaryWitness {
  bool allowed = true;
  /// alpha = beta - gamma with beta, gamma >= 0 and disjoint supports.
  MultiIndex beta;
  MultiIndex gamma;
  /// Constrained coordinates carrying a pole (gamma_j > 0).
  std::vector<int> obstructions;
};

/// Exponents that can occur for functions holomorphic inside and smooth up to
/// the boundary: alpha_j >= 0 wherever the closure meets {z_j = 0}.
SmoothBoundaryConstraint missing_monomials_smooth_boundary(const ReinhardtDomain& domain, int alpha_box);

SmoothBoundaryWitness smooth_boundary_witness(const SmoothBoundaryConstraint& c, const MultiIndex& alpha);

}  // namespace rlab
