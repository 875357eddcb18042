#include "rlab/geometry.hpp"

#include "rlab/types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace rlab::geometry {

namespace {

constexpr double kPivotEps = 1e-10;

void pivot(Eigen::MatrixXd& T, std::vector<int>& basis, int row, int col) {
  T.row(row) /= T(row, col);
  for (int i = 0; i < T.rows(); ++i) {
    if (i != row && T(i, col) != 0.0) T.row(i) -= T(i, col) * T.row(row);
  }
  basis[row] = col;
}

// Bland's rule simplex on a tableau whose last column is the rhs. Columns at
// or beyond `allowed` never enter.
LpStatus run_simplex(Eigen::MatrixXd& T, std::vector<int>& basis,
                     const Eigen::VectorXd& cost, int allowed) {
  const int m = static_cast<int>(T.rows());
  const int rhs = static_cast<int>(T.cols()) - 1;
  for (int iter = 0; iter < 100000; ++iter) {
    int entering = -1;
    for (int j = 0; j < allowed && entering < 0; ++j) {
      if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
      double reduced = cost[j];
      for (int i = 0; i < m; ++i) reduced -= cost[basis[i]] * T(i, j);
      if (reduced > kPivotEps) entering = j;
    }
    if (entering < 0) return LpStatus::Optimal;
    int leaving = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (T(i, entering) <= kPivotEps) continue;
      const double ratio = T(i, rhs) / T(i, entering);
      if (ratio < best - 1e-12 ||
          (std::abs(ratio - best) <= 1e-12 && leaving >= 0 && basis[i] < basis[leaving])) {
        best = std::min(best, ratio);
        leaving = i;
      }
    }
    if (leaving < 0) return LpStatus::Unbounded;
    pivot(T, basis, leaving, entering);
  }
  throw Error("simplex: iteration limit reached");
}

Eigen::Vector2d perp(const Eigen::VectorXd& v) { return Eigen::Vector2d(-v[1], v[0]); }

int numeric_rank(const Eigen::MatrixXd& M, double scale) {
  if (M.cols() == 0 || M.rows() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  const double tol = 1e-9 * std::max(1.0, scale);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i) r += sv[i] > tol ? 1 : 0;
  return r;
}

// Andrew's monotone chain on projected coordinates; returns indices of the
// strictly convex polygon in counterclockwise order.
std::vector<int> monotone_chain(const std::vector<Eigen::Vector2d>& pts, double eps) {
  std::vector<int> order(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (pts[a].x() != pts[b].x()) return pts[a].x() < pts[b].x();
    return pts[a].y() < pts[b].y();
  });
  auto cross = [&](int o, int a, int b) {
    const Eigen::Vector2d u = pts[a] - pts[o], v = pts[b] - pts[o];
    return u.x() * v.y() - u.y() * v.x();
  };
  std::vector<int> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t start = hull.size();
    for (std::size_t t = 0; t < order.size(); ++t) {
      const int idx = pass == 0 ? order[t] : order[order.size() - 1 - t];
      while (hull.size() >= start + 2 &&
             cross(hull[hull.size() - 2], hull.back(), idx) <= eps)
        hull.pop_back();
      hull.push_back(idx);
    }
    hull.pop_back();
  }
  return hull;
}

struct Face {
  int a, b, c;
  Eigen::Vector3d normal;
  double offset;
  bool alive = true;
};

Face make_face(const std::vector<Eigen::Vector3d>& p, int a, int b, int c,
               const Eigen::Vector3d& interior) {
  Face f{a, b, c, (p[b] - p[a]).cross(p[c] - p[a]), 0.0};
  f.normal.normalize();
  f.offset = f.normal.dot(p[a]);
  if (f.normal.dot(interior) > f.offset) {
    std::swap(f.b, f.c);
    f.normal = -f.normal;
    f.offset = -f.offset;
  }
  return f;
}

void hull3d(const std::vector<Eigen::VectorXd>& input, double scale, Hull& out) {
  std::vector<Eigen::Vector3d> p;
  p.reserve(input.size());
  for (const auto& v : input) p.emplace_back(v[0], v[1], v[2]);
  const double eps = 1e-10 * scale;
  const int N = static_cast<int>(p.size());

  // Initial tetrahedron from extremal choices (first index wins ties).
  int i0 = 0, i1 = 0, i2 = -1, i3 = -1;
  double best = -1;
  for (int i = 0; i < N; ++i)
    if ((p[i] - p[i0]).norm() > best) best = (p[i] - p[i0]).norm(), i1 = i;
  best = -1;
  const Eigen::Vector3d dir = (p[i1] - p[i0]).normalized();
  for (int i = 0; i < N; ++i) {
    const double d = (p[i] - p[i0]).cross(dir).norm();
    if (d > best) best = d, i2 = i;
  }
  best = -1;
  const Eigen::Vector3d nrm = (p[i1] - p[i0]).cross(p[i2] - p[i0]).normalized();
  for (int i = 0; i < N; ++i) {
    const double d = std::abs(nrm.dot(p[i] - p[i0]));
    if (d > best) best = d, i3 = i;
  }
  const Eigen::Vector3d interior = (p[i0] + p[i1] + p[i2] + p[i3]) / 4.0;
  std::vector<Face> faces{make_face(p, i0, i1, i2, interior), make_face(p, i0, i1, i3, interior),
                          make_face(p, i0, i2, i3, interior), make_face(p, i1, i2, i3, interior)};

  for (int i = 0; i < N; ++i) {
    if (i == i0 || i == i1 || i == i2 || i == i3) continue;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (faces[f].alive && faces[f].normal.dot(p[i]) - faces[f].offset > eps) visible.push_back(f);
    if (visible.empty()) continue;
    std::map<std::pair<int, int>, int> directed;
    for (std::size_t f : visible) {
      const Face& F = faces[f];
      directed[{F.a, F.b}]++;
      directed[{F.b, F.c}]++;
      directed[{F.c, F.a}]++;
    }
    for (std::size_t f : visible) faces[f].alive = false;
    for (const auto& [edge, count] : directed) {
      if (directed.count({edge.second, edge.first})) continue;
      faces.push_back(make_face(p, edge.first, edge.second, i, interior));
    }
  }

  std::map<int, std::vector<Eigen::Vector3d>> incident;
  std::set<std::pair<int, int>> edges;
  for (const auto& F : faces) {
    if (!F.alive) continue;
    out.face_normals.push_back(F.normal);
    for (int v : {F.a, F.b, F.c}) incident[v].push_back(F.normal);
    for (auto e : {std::pair{F.a, F.b}, std::pair{F.b, F.c}, std::pair{F.c, F.a}})
      edges.insert({std::min(e.first, e.second), std::max(e.first, e.second)});
  }
  // A boundary vertex is extreme iff its incident face normals span R^3.
  for (const auto& [v, normals] : incident) {
    Eigen::MatrixXd M(3, normals.size());
    for (std::size_t k = 0; k < normals.size(); ++k) M.col(static_cast<Eigen::Index>(k)) = normals[k];
    if (numeric_rank(M, 1.0) == 3) out.vertices.push_back(input[v]);
  }
  for (const auto& [a, b] : edges) out.edges.emplace_back(input[a], input[b]);
}

}  // namespace

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

LpResult maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& G, const Eigen::VectorXd& h) {
  const int k = static_cast<int>(c.size());
  const int m = static_cast<int>(G.rows());
  int na = 0;
  for (int i = 0; i < m; ++i) na += h[i] < 0 ? 1 : 0;
  const int ncol = 2 * k + m + na;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, ncol + 1);
  std::vector<int> basis(m);
  int art = 0;
  for (int i = 0; i < m; ++i) {
    const double s = h[i] < 0 ? -1.0 : 1.0;
    T.row(i).segment(0, k) = s * G.row(i);
    T.row(i).segment(k, k) = -s * G.row(i);
    T(i, 2 * k + i) = s;
    T(i, ncol) = s * h[i];
    if (s < 0) {
      T(i, 2 * k + m + art) = 1.0;
      basis[i] = 2 * k + m + art;
      ++art;
    } else {
      basis[i] = 2 * k + i;
    }
  }
  LpResult result;
  if (na > 0) {
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(ncol);
    cost.tail(na).setConstant(-1.0);
    run_simplex(T, basis, cost, ncol);
    double infeas = 0;
    for (int i = 0; i < m; ++i)
      if (basis[i] >= 2 * k + m) infeas += T(i, ncol);
    if (infeas > 1e-9 * (1.0 + h.cwiseAbs().maxCoeff())) return result;
    for (int i = 0; i < m; ++i) {
      if (basis[i] < 2 * k + m) continue;
      for (int j = 0; j < 2 * k + m; ++j) {
        if (std::abs(T(i, j)) > 1e-9) {
          pivot(T, basis, i, j);
          break;
        }
      }
    }
  }
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(ncol);
  cost.segment(0, k) = c;
  cost.segment(k, k) = -c;
  const LpStatus status = run_simplex(T, basis, cost, 2 * k + m);
  result.status = status;
  if (status != LpStatus::Optimal) return result;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(2 * k);
  for (int i = 0; i < m; ++i)
    if (basis[i] < 2 * k) y[basis[i]] = T(i, ncol);
  result.x = y.head(k) - y.tail(k);
  result.value = c.dot(result.x);
  return result;
}

Hull convex_hull(std::vector<Eigen::VectorXd> points) {
  if (points.empty()) throw DomainError("convex_hull: empty point set");
  const int n = static_cast<int>(points[0].size());
  if (n < 1 || n > 3) throw DomainError("convex_hull: supported dimensions are 1, 2 and 3");
  for (const auto& p : points) {
    if (p.size() != n) throw DomainError("convex_hull: inconsistent point dimensions");
    if (!p.allFinite()) throw DomainError("convex_hull: non-finite coordinate");
  }
  std::sort(points.begin(), points.end(), lex_less);
  points.erase(std::unique(points.begin(), points.end(),
                           [](const auto& a, const auto& b) { return a == b; }),
               points.end());

  Hull out;
  out.dimension = n;
  const Eigen::VectorXd& p0 = points[0];
  Eigen::MatrixXd M(n, points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    M.col(static_cast<Eigen::Index>(i)) = points[i] - p0;
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if (points.size() == 1) {
    out.vertices = points;
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    rank += sv[i] > 1e-9 * scale * std::sqrt(static_cast<double>(points.size())) ? 1 : 0;
  out.affine_rank = rank;
  const Eigen::MatrixXd U = svd.matrixU();

  if (rank == 0) {
    out.vertices = {p0};
  } else if (rank == 1) {
    const Eigen::VectorXd u = U.col(0);
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double t = u.dot(points[i] - p0);
      if (t < u.dot(points[lo] - p0)) lo = i;
      if (t > u.dot(points[hi] - p0)) hi = i;
    }
    out.vertices = {points[lo], points[hi]};
    out.edges.emplace_back(points[lo], points[hi]);
  } else if (rank == 2) {
    std::vector<Eigen::Vector2d> proj;
    proj.reserve(points.size());
    for (const auto& p : points)
      proj.emplace_back(U.col(0).dot(p - p0), U.col(1).dot(p - p0));
    const auto poly = monotone_chain(proj, 1e-12 * scale * scale);
    for (std::size_t t = 0; t < poly.size(); ++t) {
      out.vertices.push_back(points[poly[t]]);
      out.edges.emplace_back(points[poly[t]], points[poly[(t + 1) % poly.size()]]);
    }
    if (n == 3) {
      out.face_normals.push_back(U.col(2));
      out.face_normals.push_back(-U.col(2));
    }
  } else {
    hull3d(points, scale, out);
  }
  std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
  return out;
}

bool Polyhedron::contains(const Eigen::VectorXd& x, double margin) const {
  if (!full_dimensional) return false;
  for (const auto& f : facets)
    if (!(f.normal.dot(x) < f.offset - margin)) return false;
  return true;
}

Polyhedron hull_polyhedron(const Hull& hull, const std::set<int>& recession) {
  const int n = hull.dimension;
  Polyhedron P;
  std::vector<Eigen::VectorXd> dirs;
  for (int j : recession) {
    if (j < 0 || j >= n) throw DomainError("hull_polyhedron: recession index out of range");
    dirs.push_back(-Eigen::VectorXd::Unit(n, j));
  }
  const auto& V = hull.vertices;
  double scale = 1.0;
  for (const auto& v : V) scale = std::max(scale, v.cwiseAbs().maxCoeff());
  {
    Eigen::MatrixXd span(n, static_cast<Eigen::Index>(V.size() - 1 + dirs.size()));
    Eigen::Index c = 0;
    for (std::size_t i = 1; i < V.size(); ++i) span.col(c++) = V[i] - V[0];
    for (const auto& d : dirs) span.col(c++) = d;
    P.full_dimensional = numeric_rank(span, scale) == n;
  }
  if (!P.full_dimensional) return P;

  std::vector<Eigen::VectorXd> candidates;
  auto both = [&](const Eigen::VectorXd& a) {
    candidates.push_back(a);
    candidates.push_back(-a);
  };
  if (n == 1) {
    both(Eigen::VectorXd::Ones(1));
  } else if (n == 2) {
    for (const auto& [a, b] : hull.edges) both(perp(b - a));
    for (const auto& d : dirs) both(perp(d));
  } else {
    for (const auto& nrm : hull.face_normals) both(nrm);
    for (const auto& [a, b] : hull.edges) {
      const Eigen::Vector3d e = b - a;
      for (const auto& d : dirs) both(e.cross(Eigen::Vector3d(d)));
    }
    for (std::size_t s = 0; s < dirs.size(); ++s)
      for (std::size_t t = s + 1; t < dirs.size(); ++t)
        both(Eigen::Vector3d(dirs[s]).cross(Eigen::Vector3d(dirs[t])));
  }
  for (auto a : candidates) {
    const double norm = a.norm();
    if (norm < 1e-12) continue;
    a /= norm;
    bool valid = true;
    for (const auto& d : dirs) valid = valid && a.dot(d) <= 1e-12;
    if (!valid) continue;
    double b = -std::numeric_limits<double>::infinity();
    for (const auto& v : V) b = std::max(b, a.dot(v));
    bool duplicate = false;
    for (auto& f : P.facets) {
      if ((f.normal - a).cwiseAbs().maxCoeff() < 1e-10) {
        f.offset = std::max(f.offset, b);
        duplicate = true;
        break;
      }
    }
    if (!duplicate) P.facets.push_back({a, b});
  }
  return P;
}

ChebyshevBall chebyshev_center(const std::vector<HalfSpace>& facets, const Eigen::VectorXd& lo,
                               const Eigen::VectorXd& hi) {
  const int n = static_cast<int>(lo.size());
  const int m = static_cast<int>(facets.size()) + 2 * n;
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, n + 1);
  Eigen::VectorXd h(m);
  int r = 0;
  for (const auto& f : facets) {
    G.row(r).head(n) = f.normal.transpose();
    G(r, n) = 1.0;
    h[r++] = f.offset;
  }
  for (int j = 0; j < n; ++j) {
    G(r, j) = 1.0;
    G(r, n) = 1.0;
    h[r++] = hi[j];
    G(r, j) = -1.0;
    G(r, n) = 1.0;
    h[r++] = -lo[j];
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
  c[n] = 1.0;
  const LpResult res = maximize(c, G, h);
  if (res.status != LpStatus::Optimal) throw DomainError("chebyshev_center: empty region");
  return {res.x.head(n), res.x[n]};
}

namespace {
Eigen::VectorXd coordinate_extreme(const std::vector<HalfSpace>& facets, int n, double sign) {
  Eigen::MatrixXd G(facets.size(), n);
  Eigen::VectorXd h(facets.size());
  for (std::size_t i = 0; i < facets.size(); ++i) {
    G.row(static_cast<Eigen::Index>(i)) = facets[i].normal.transpose();
    h[static_cast<Eigen::Index>(i)] = facets[i].offset;
  }
  Eigen::VectorXd out(n);
  for (int j = 0; j < n; ++j) {
    const LpResult res = maximize(sign * Eigen::VectorXd::Unit(n, j), G, h);
    if (res.status == LpStatus::Infeasible) throw DomainError("coordinate bound: empty region");
    out[j] = res.status == LpStatus::Unbounded ? sign * std::numeric_limits<double>::infinity()
                                               : res.x[j];
  }
  return out;
}
}  // namespace

Eigen::VectorXd coordinate_sup(const std::vector<HalfSpace>& facets, int dimension) {
  return coordinate_extreme(facets, dimension, 1.0);
}

Eigen::VectorXd coordinate_inf(const std::vector<HalfSpace>& facets, int dimension) {
  return coordinate_extreme(facets, dimension, -1.0);
}

}  // namespace rlab::geometry
