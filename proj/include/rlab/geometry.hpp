#pragma once

// Low-dimensional polyhedral geometry backing the logarithmic shadows:
// a dense two-phase simplex, convex hulls for n <= 3, and the facet
// description of conv(V) + cone(-e_j : j in R).

#include <Eigen/Core>

#include <set>
#include <utility>
#include <vector>

namespace rlab::geometry {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;
  double value = 0.0;
};

/// maximize c.x subject to G x <= h, x free.
LpResult maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& G,
                  const Eigen::VectorXd& h);

/// normal . x <= offset, with |normal| = 1.
struct HalfSpace {
  Eigen::VectorXd normal;
  double offset = 0.0;
};

struct Hull {
  int dimension = 0;
  int affine_rank = 0;
  /// Extreme points, lexicographically sorted.
  std::vector<Eigen::VectorXd> vertices;
  /// Segments between vertices of the boundary (indices into `vertices`
  /// are not used; endpoints are stored directly).
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> edges;
  /// Outward normals of 2-faces (n = 3) or of the supporting plane when the
  /// point set is flat.
  std::vector<Eigen::VectorXd> face_normals;
};

/// Deduplicates (exact), sorts lexicographically and hulls. Supports n <= 3.
Hull convex_hull(std::vector<Eigen::VectorXd> points);

/// Lexicographic order on equal-length vectors.
bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct Polyhedron {
  std::vector<HalfSpace> facets;
  bool full_dimensional = false;

  /// Strict membership with margin: normal.x < offset - margin for all facets.
  bool contains(const Eigen::VectorXd& x, double margin) const;
};

/// H-representation of conv(hull.vertices) + cone(-e_j : j in recession).
Polyhedron hull_polyhedron(const Hull& hull, const std::set<int>& recession);

/// Deepest point of {x : facets} intersected with lo <= x <= hi.
struct ChebyshevBall {
  Eigen::VectorXd center;
  double radius = 0.0;
};
ChebyshevBall chebyshev_center(const std::vector<HalfSpace>& facets,
                               const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);

/// Coordinate-wise supremum of {x : facets}; +inf when unbounded.
Eigen::VectorXd coordinate_sup(const std::vector<HalfSpace>& facets, int dimension);
Eigen::VectorXd coordinate_inf(const std::vector<HalfSpace>& facets, int dimension);

}  // namespace rlab::geometry
