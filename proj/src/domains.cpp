#include "rlab/domains.hpp"

#include "rlab/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rlab {

namespace {

constexpr double kLog4 = 1.3862943611198906;
constexpr double kLog2 = 0.6931471805599453;

Eigen::VectorXd as_vector(const MultiIndex& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t j = 0; j < a.size(); ++j) v[static_cast<Eigen::Index>(j)] = a[j];
  return v;
}

std::set<int> piece_coordinate_recession(const std::vector<LogPiece>& pieces, int n) {
  std::set<int> out;
  for (const auto& piece : pieces) {
    for (int j = 0; j < n; ++j) {
      bool recedes = true;
      for (const auto& b : piece.bounds) recedes = recedes && b.alpha[j] >= 0;
      if (recedes) out.insert(j);
    }
  }
  return out;
}

// Fourier-Motzkin closure of a piece under x -> x - s e_j, s >= 0. Monomial
// bounds stay monomial bounds, so exactness is preserved.
std::optional<LogPiece> complete_piece(const LogPiece& piece, int j) {
  std::vector<MonomialBound> keep, lower;
  for (const auto& b : piece.bounds) (b.alpha[j] < 0 ? lower : keep).push_back(b);
  std::vector<MonomialBound> out = keep;
  for (const auto& p : keep) {
    if (p.alpha[j] <= 0) continue;
    for (const auto& q : lower) {
      const int ap = p.alpha[j], aq = q.alpha[j];
      MultiIndex combined(std::vector<int>(p.alpha.size()));
      for (std::size_t k = 0; k < p.alpha.size(); ++k)
        combined[k] = ap * q.alpha[k] - aq * p.alpha[k];
      out.push_back({combined, ap * q.log_bound - aq * p.log_bound});
    }
  }
  LogPiece result;
  for (auto& b : out) {
    if (b.alpha.linf() == 0) {
      if (b.log_bound <= 0) return std::nullopt;
      continue;
    }
    if (std::find_if(result.bounds.begin(), result.bounds.end(), [&](const MonomialBound& r) {
          return r.alpha == b.alpha && r.log_bound == b.log_bound;
        }) == result.bounds.end())
      result.bounds.push_back(b);
  }
  return result;
}

LogShadow shadow_from_pieces(int n, const std::vector<LogPiece>& pieces, const SamplingOptions& opts) {
  LogShadow s;
  s.dimension = n;
  for (const auto& piece : pieces) {
    auto pts = sample_piece(piece, n, opts);
    s.points.insert(s.points.end(), pts.begin(), pts.end());
  }
  s.recession_directions = piece_coordinate_recession(pieces, n);
  return s;
}

// Membership of the limit point obtained by sending log|z_j| -> -inf for j in
// `zeros`; a constraint with a positive coefficient on a vanishing coordinate
// is satisfied in the limit, a negative one is violated.
bool limit_halfspace(const Eigen::VectorXd& normal, double offset, const Eigen::VectorXd& x,
                     const std::vector<bool>& zero, double margin) {
  bool any_positive = false, any_negative = false;
  double lhs = 0.0;
  for (Eigen::Index j = 0; j < normal.size(); ++j) {
    if (zero[static_cast<std::size_t>(j)]) {
      if (normal[j] > 1e-12) any_positive = true;
      if (normal[j] < -1e-12) any_negative = true;
    } else {
      lhs += normal[j] * x[j];
    }
  }
  if (any_positive) return true;
  if (any_negative) return false;
  return lhs < offset - margin;
}

struct Region {
  std::vector<geometry::HalfSpace> facets;
};

std::vector<Region> regions_of(const ReinhardtDomain& domain) {
  std::vector<Region> out;
  const int n = domain.dimension();
  if (!domain.pieces().empty()) {
    for (const auto& piece : domain.pieces()) out.push_back({piece.halfspaces(n)});
    return out;
  }
  const LogShadow& s = domain.shadow();
  if (!s.hull_vertices) {
    out.push_back({log_convex_hull(s).polyhedron.facets});
  } else {
    out.push_back({s.polyhedron.facets});
  }
  return out;
}

void window_of(const Region& region, int n, Eigen::VectorXd& lo, Eigen::VectorXd& hi) {
  const Eigen::VectorXd sup = geometry::coordinate_sup(region.facets, n);
  const Eigen::VectorXd inf = geometry::coordinate_inf(region.facets, n);
  lo.resize(n);
  hi.resize(n);
  for (int j = 0; j < n; ++j) {
    const bool fs = std::isfinite(sup[j]), fi = std::isfinite(inf[j]);
    if (fs && fi) {
      lo[j] = inf[j];
      hi[j] = sup[j];
    } else if (fs) {
      lo[j] = sup[j] - kLog4;
      hi[j] = sup[j];
    } else if (fi) {
      lo[j] = inf[j];
      hi[j] = inf[j] + kLog4;
    } else {
      lo[j] = -kLog2;
      hi[j] = kLog2;
    }
  }
}

}  // namespace

MonomialBound MonomialBound::less_than(MultiIndex alpha, double c) {
  if (!(c > 0) || !std::isfinite(c)) throw DomainError("monomial bound must be a positive finite number");
  return {std::move(alpha), std::log(c)};
}

std::vector<geometry::HalfSpace> LogPiece::halfspaces(int n) const {
  std::vector<geometry::HalfSpace> out;
  for (const auto& b : bounds) {
    if (static_cast<int>(b.alpha.size()) != n) throw DomainError("monomial bound dimension mismatch");
    Eigen::VectorXd a = as_vector(b.alpha);
    const double norm = a.norm();
    if (norm == 0) continue;
    out.push_back({a / norm, b.log_bound / norm});
  }
  return out;
}

bool LogPiece::contains(const Eigen::VectorXd& x, double margin) const {
  for (const auto& b : bounds) {
    const Eigen::VectorXd a = as_vector(b.alpha);
    const double norm = a.norm();
    if (norm == 0) {
      if (b.log_bound <= 0) return false;
      continue;
    }
    if (!(a.dot(x) < b.log_bound - margin * norm)) return false;
  }
  return true;
}

void LogShadow::validate() const {
  if (dimension < 1) throw DomainError("shadow dimension must be >= 1");
  if (dimension > 3) throw DomainError("shadow dimension above 3 is not supported");
  if (points.empty()) throw DomainError("shadow point sample is empty");
  for (const auto& p : points) {
    if (p.size() != dimension) throw DomainError("shadow point has wrong dimension");
    if (!p.allFinite()) throw DomainError("shadow point is not finite");
  }
  for (int j : recession_directions)
    if (j < 0 || j >= dimension) throw DomainError("recession direction out of range");
  if (hull_vertices)
    for (const auto& v : *hull_vertices)
      if (v.size() != dimension || !v.allFinite()) throw DomainError("invalid hull vertex");
}

ReinhardtDomain::ReinhardtDomain(LogShadow shadow, std::vector<bool> axis_flags,
                                 std::vector<LogPiece> pieces, SamplingOptions sampling)
    : shadow_(std::move(shadow)),
      axis_flags_(std::move(axis_flags)),
      pieces_(std::move(pieces)),
      sampling_(sampling) {
  shadow_.validate();
  if (static_cast<int>(axis_flags_.size()) != shadow_.dimension)
    throw DomainError("axis_flags length must equal the dimension");
  for (int j = 0; j < shadow_.dimension; ++j)
    if (axis_flags_[static_cast<std::size_t>(j)] && !shadow_.recession_directions.count(j))
      throw DomainError("axis flag set for a coordinate the shadow does not recede along");
}

std::vector<Eigen::VectorXd> sample_piece(const LogPiece& piece, int n, const SamplingOptions& opts) {
  // Rows: the monomial bounds plus the clipping box.
  std::vector<Eigen::VectorXd> A;
  std::vector<double> b;
  for (const auto& mb : piece.bounds) {
    if (static_cast<int>(mb.alpha.size()) != n) throw DomainError("monomial bound dimension mismatch");
    A.push_back(as_vector(mb.alpha));
    b.push_back(mb.log_bound);
  }
  for (int j = 0; j < n; ++j) {
    A.push_back(Eigen::VectorXd::Unit(n, j));
    b.push_back(opts.log_ceiling);
    A.push_back(-Eigen::VectorXd::Unit(n, j));
    b.push_back(-opts.log_floor);
  }
  const int m = static_cast<int>(A.size());
  std::vector<Eigen::VectorXd> vertices;
  std::vector<int> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd rhs(n);
    for (int r = 0; r < n; ++r) {
      M.row(r) = A[pick[r]].transpose();
      rhs[r] = b[pick[r]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (lu.isInvertible()) {
      const Eigen::VectorXd x = lu.solve(rhs);
      bool feasible = x.allFinite();
      for (int r = 0; r < m && feasible; ++r)
        feasible = A[r].dot(x) <= b[r] + 1e-9 * (1.0 + std::abs(b[r]));
      if (feasible &&
          std::none_of(vertices.begin(), vertices.end(),
                       [&](const Eigen::VectorXd& v) { return (v - x).cwiseAbs().maxCoeff() < 1e-9; }))
        vertices.push_back(x);
    }
    int k = n - 1;
    while (k >= 0 && pick[k] == m - n + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int t = k + 1; t < n; ++t) pick[t] = pick[t - 1] + 1;
  }
  if (vertices.empty()) throw DomainError("piece is empty inside the sampling box");
  std::sort(vertices.begin(), vertices.end(), geometry::lex_less);

  std::vector<Eigen::VectorXd> out = vertices;
  if (opts.samples_per_face > 0 && n >= 2) {
    constexpr double kGolden = 0.6180339887498949;
    for (int r = 0; r < m; ++r) {
      std::vector<const Eigen::VectorXd*> face;
      for (const auto& v : vertices)
        if (std::abs(A[r].dot(v) - b[r]) <= 1e-9 * (1.0 + std::abs(b[r]))) face.push_back(&v);
      if (face.size() < 2) continue;
      for (int s = 1; s <= opts.samples_per_face; ++s) {
        Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
        double total = 0;
        for (std::size_t v = 0; v < face.size(); ++v) {
          const double x = static_cast<double>(s) * static_cast<double>(v + 1) * kGolden;
          const double w = 0.05 + (x - std::floor(x));
          p += w * *face[v];
          total += w;
        }
        out.push_back(p / total);
      }
    }
  }
  return out;
}

ReinhardtDomain domain_from_pieces(int n, std::vector<LogPiece> pieces,
                                   std::optional<std::vector<bool>> axis_flags, SamplingOptions sampling) {
  if (n < 1 || n > 3) throw DomainError("supported dimensions are 1, 2 and 3");
  if (pieces.empty()) throw DomainError("domain needs at least one piece");
  for (const auto& piece : pieces) {
    const auto facets = piece.halfspaces(n);
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(n, sampling.log_floor);
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(n, sampling.log_ceiling);
    for (const auto& b : piece.bounds)
      if (b.alpha.linf() == 0 && b.log_bound <= 0) throw DomainError("piece has empty interior");
    double radius = 0;
    try {
      radius = geometry::chebyshev_center(facets, lo, hi).radius;
    } catch (const DomainError&) {
      radius = 0;
    }
    if (radius <= 1e-12) throw DomainError("piece has empty interior");
  }
  LogShadow shadow = shadow_from_pieces(n, pieces, sampling);
  std::vector<bool> flags(static_cast<std::size_t>(n));
  if (axis_flags) {
    flags = *axis_flags;
  } else {
    for (int j = 0; j < n; ++j) flags[static_cast<std::size_t>(j)] = shadow.recession_directions.count(j) > 0;
  }
  return ReinhardtDomain(std::move(shadow), std::move(flags), std::move(pieces), sampling);
}

ReinhardtDomain domain_from_samples(std::vector<Eigen::VectorXd> points, std::set<int> recession,
                                    std::optional<std::vector<bool>> axis_flags) {
  if (points.empty()) throw DomainError("shadow point sample is empty");
  LogShadow shadow;
  shadow.dimension = static_cast<int>(points[0].size());
  shadow.points = std::move(points);
  shadow.recession_directions = std::move(recession);
  std::vector<bool> flags(static_cast<std::size_t>(shadow.dimension), false);
  if (axis_flags) flags = *axis_flags;
  return ReinhardtDomain(std::move(shadow), std::move(flags));
}

Eigen::VectorXd log_map(const Point<double>& z) {
  Eigen::VectorXd x(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    const double r = std::abs(z[j]);
    if (r == 0.0) throw DomainError("log_map: coordinate z_" + std::to_string(j + 1) + " is zero");
    x[j] = std::log(r);
  }
  return x;
}

LogShadow log_convex_hull(const LogShadow& shadow) {
  shadow.validate();
  LogShadow out = shadow;
  const geometry::Hull hull = geometry::convex_hull(shadow.points);
  out.hull_vertices = hull.vertices;
  out.polyhedron = geometry::hull_polyhedron(hull, shadow.recession_directions);
  return out;
}

ReinhardtDomain relative_completion(const ReinhardtDomain& domain) {
  const int n = domain.dimension();
  const auto& flags = domain.axis_flags();
  if (std::none_of(flags.begin(), flags.end(), [](bool f) { return f; })) return domain;
  if (!domain.pieces().empty()) {
    std::vector<LogPiece> pieces;
    for (const auto& piece : domain.pieces()) {
      std::optional<LogPiece> current = piece;
      for (int j = 0; j < n && current; ++j)
        if (flags[static_cast<std::size_t>(j)]) current = complete_piece(*current, j);
      if (current) pieces.push_back(*current);
    }
    LogShadow shadow = shadow_from_pieces(n, pieces, domain.sampling());
    for (int j = 0; j < n; ++j)
      if (flags[static_cast<std::size_t>(j)]) shadow.recession_directions.insert(j);
    return ReinhardtDomain(std::move(shadow), flags, std::move(pieces), domain.sampling());
  }
  LogShadow shadow = domain.shadow();
  for (int j = 0; j < n; ++j)
    if (flags[static_cast<std::size_t>(j)]) shadow.recession_directions.insert(j);
  if (shadow.hull_vertices) shadow = log_convex_hull(shadow);
  return ReinhardtDomain(std::move(shadow), flags, {}, domain.sampling());
}

ReinhardtDomain envelope(const ReinhardtDomain& domain) {
  LogShadow shadow = domain.shadow();
  if (domain.pieces().empty() && shadow.hull_vertices) shadow.points = *shadow.hull_vertices;
  const int n = domain.dimension();
  for (int j = 0; j < n; ++j)
    if (domain.axis_flags()[static_cast<std::size_t>(j)]) shadow.recession_directions.insert(j);
  shadow = log_convex_hull(shadow);
  std::vector<bool> flags(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) flags[static_cast<std::size_t>(j)] = shadow.recession_directions.count(j) > 0;
  return ReinhardtDomain(std::move(shadow), std::move(flags), {}, domain.sampling());
}

bool shadow_contains(const LogShadow& shadow, const Eigen::VectorXd& x, double margin) {
  if (!shadow.hull_vertices) throw DomainError("shadow_contains: hull has not been computed");
  return shadow.polyhedron.contains(x, margin);
}

bool contains(const ReinhardtDomain& domain, const Point<double>& z, double margin) {
  const int n = domain.dimension();
  if (z.size() != n) throw DomainError("contains: point dimension mismatch");
  std::vector<bool> zero(static_cast<std::size_t>(n));
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  bool any_zero = false;
  for (int j = 0; j < n; ++j) {
    const double r = std::abs(z[j]);
    if (!std::isfinite(r)) return false;
    zero[static_cast<std::size_t>(j)] = r == 0.0;
    if (r == 0.0) {
      if (!domain.axis_flags()[static_cast<std::size_t>(j)]) return false;
      any_zero = true;
    } else {
      x[j] = std::log(r);
    }
  }
  if (!domain.pieces().empty()) {
    for (const auto& piece : domain.pieces()) {
      if (!any_zero) {
        if (piece.contains(x, margin)) return true;
        continue;
      }
      bool inside = true;
      for (const auto& f : piece.halfspaces(n)) inside = inside && limit_halfspace(f.normal, f.offset, x, zero, margin);
      if (inside) return true;
    }
    return false;
  }
  const LogShadow& s = domain.shadow();
  if (!s.hull_vertices) throw DomainError("contains: domain hull has not been computed");
  if (!any_zero) return s.polyhedron.contains(x, margin);
  if (!s.polyhedron.full_dimensional) return false;
  for (const auto& f : s.polyhedron.facets)
    if (!limit_halfspace(f.normal, f.offset, x, zero, margin)) return false;
  return true;
}

std::vector<MultiIndex> smooth_monomial_set(const ReinhardtDomain& domain, int bound) {
  if (bound < 0) throw PreconditionError("smooth_monomial_set: bound must be >= 0");
  std::vector<MultiIndex> out;
  for (auto& alpha : index_box(static_cast<std::size_t>(domain.dimension()), bound)) {
    bool ok = true;
    for (std::size_t j = 0; j < alpha.size(); ++j) ok = ok && (!domain.axis_flags()[j] || alpha[j] >= 0);
    if (ok) out.push_back(std::move(alpha));
  }
  return out;
}

bool monomial_hull_membership(const std::vector<Point<double>>& K, const Point<double>& zeta, int alpha_box) {
  if (K.empty()) throw PreconditionError("monomial_hull_membership: K is empty");
  const Eigen::VectorXd xz = log_map(zeta);
  std::vector<Eigen::VectorXd> xs;
  for (const auto& q : K) xs.push_back(log_map(q));
  for (const auto& alpha : index_box(static_cast<std::size_t>(zeta.size()), alpha_box)) {
    const Eigen::VectorXd a = as_vector(alpha);
    double sup = -std::numeric_limits<double>::infinity();
    for (const auto& x : xs) sup = std::max(sup, a.dot(x));
    if (a.dot(xz) > sup + 1e-12 * (1.0 + std::abs(sup))) return false;
  }
  return true;
}

std::vector<std::vector<long long>> recession_rays(const LogPiece& piece, int n) {
  std::vector<std::vector<long long>> rows;
  for (const auto& b : piece.bounds) {
    if (b.alpha.linf() == 0) continue;
    rows.emplace_back(b.alpha.exponents.begin(), b.alpha.exponents.end());
  }
  std::vector<std::vector<long long>> candidates;
  auto both = [&](std::vector<long long> d) {
    candidates.push_back(d);
    for (auto& v : d) v = -v;
    candidates.push_back(std::move(d));
  };
  auto unit = [&](int j) {
    std::vector<long long> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(j)] = 1;
    return e;
  };
  auto cross = [](const std::vector<long long>& a, const std::vector<long long>& b) {
    return std::vector<long long>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  };
  for (int j = 0; j < n; ++j) both(unit(j));
  if (n == 2) {
    for (const auto& a : rows) both({-a[1], a[0]});
  } else if (n == 3) {
    for (std::size_t s = 0; s < rows.size(); ++s) {
      for (int j = 0; j < 3; ++j) both(cross(rows[s], unit(j)));
      for (std::size_t t = s + 1; t < rows.size(); ++t) both(cross(rows[s], rows[t]));
    }
  }
  std::vector<std::vector<long long>> out;
  for (auto& d : candidates) {
    long long g = 0;
    for (auto v : d) g = std::gcd(g, v < 0 ? -v : v);
    if (g == 0) continue;
    for (auto& v : d) v /= g;
    bool inside = true;
    for (const auto& a : rows) {
      long long dot = 0;
      for (int j = 0; j < n; ++j) dot += a[static_cast<std::size_t>(j)] * d[static_cast<std::size_t>(j)];
      inside = inside && dot <= 0;
    }
    if (inside && std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<bool> closure_axis_contact(const ReinhardtDomain& domain) {
  const int n = domain.dimension();
  std::vector<bool> out(static_cast<std::size_t>(n), false);
  if (!domain.pieces().empty()) {
    for (const auto& piece : domain.pieces())
      for (const auto& d : recession_rays(piece, n))
        for (int j = 0; j < n; ++j)
          if (d[static_cast<std::size_t>(j)] < 0) out[static_cast<std::size_t>(j)] = true;
    return out;
  }
  for (int j : domain.shadow().recession_directions) out[static_cast<std::size_t>(j)] = true;
  return out;
}

geometry::ChebyshevBall extraction_ball(const ReinhardtDomain& domain) {
  const int n = domain.dimension();
  geometry::ChebyshevBall best;
  best.radius = -1;
  for (const auto& region : regions_of(domain)) {
    Eigen::VectorXd lo, hi;
    window_of(region, n, lo, hi);
    const auto ball = geometry::chebyshev_center(region.facets, lo, hi);
    if (ball.radius > best.radius) best = ball;
  }
  if (best.radius <= 1e-12) throw DomainError("extraction_ball: shadow has empty interior");
  return best;
}

std::vector<Point<double>> sample_interior(const ReinhardtDomain& domain, std::size_t count, double margin) {
  const int n = domain.dimension();
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = -lo;
  for (const auto& region : regions_of(domain)) {
    Eigen::VectorXd l, h;
    window_of(region, n, l, h);
    lo = lo.cwiseMin(l);
    hi = hi.cwiseMax(h);
  }
  ReinhardtDomain hulled = domain;
  if (domain.pieces().empty() && !domain.shadow().hull_vertices)
    hulled = ReinhardtDomain(log_convex_hull(domain.shadow()), domain.axis_flags(), {}, domain.sampling());
  static constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13};
  std::vector<Point<double>> out;
  for (std::uint64_t i = 1; out.size() < count && i < 1000 * (count + 1); ++i) {
    Point<double> z(n);
    for (int j = 0; j < n; ++j) {
      const double x = lo[j] + (hi[j] - lo[j]) * halton(i, kPrimes[j]);
      const double theta = 2.0 * M_PI * halton(i, kPrimes[j + 3]);
      z[j] = std::polar(std::exp(x), theta);
    }
    if (contains(hulled, z, margin)) out.push_back(z);
  }
  return out;
}

}  // namespace rlab
