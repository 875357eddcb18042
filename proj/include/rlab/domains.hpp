#pragma once

// Reinhardt domains in C^n (n <= 3) represented through their logarithmic
// shadows Lambda(Omega \ Z) = {(log|z_1|, ..., log|z_n|)}.

#include "rlab/geometry.hpp"
#include "rlab/types.hpp"

#include <Eigen/Core>

#include <optional>
#include <set>
#include <vector>

namespace rlab {

/// Default strict-interior margin in log coordinates.
inline constexpr double kGeomMargin = 1e-9;

/// |z^alpha| < exp(log_bound), i.e. the half-space alpha . x < log_bound.
struct MonomialBound {
  MultiIndex alpha;
  double log_bound = 0.0;

  static MonomialBound less_than(MultiIndex alpha, double c);
};

/// One convex polyhedral piece of a shadow, cut out by monomial bounds.
struct LogPiece {
  std::vector<MonomialBound> bounds;

  std::vector<geometry::HalfSpace> halfspaces(int n) const;
  bool contains(const Eigen::VectorXd& x, double margin) const;
};

struct LogShadow {
  int dimension = 0;
  /// Finite sample of the shadow.
  std::vector<Eigen::VectorXd> points;
  /// Extreme points of conv(points), once computed.
  std::optional<std::vector<Eigen::VectorXd>> hull_vertices;
  /// Coordinates j along which the shadow is extended by the ray -e_j.
  std::set<int> recession_directions;
  /// Facets of conv(hull_vertices) + cone(-e_j); filled with hull_vertices.
  geometry::Polyhedron polyhedron;

  void validate() const;
};

/// How a shadow sample is generated from exact pieces.
struct SamplingOptions {
  int samples_per_face = 0;
  double log_floor = -20.0;
  double log_ceiling = 20.0;
};

class ReinhardtDomain {
 public:
  ReinhardtDomain(LogShadow shadow, std::vector<bool> axis_flags,
                  std::vector<LogPiece> pieces = {}, SamplingOptions sampling = {});

  int dimension() const { return shadow_.dimension; }
  const LogShadow& shadow() const { return shadow_; }
  const std::vector<bool>& axis_flags() const { return axis_flags_; }
  /// Exact description as a union of pieces; empty when the domain is only
  /// known through its (hulled) shadow sample.
  const std::vector<LogPiece>& pieces() const { return pieces_; }
  const SamplingOptions& sampling() const { return sampling_; }

 private:
  LogShadow shadow_;
  std::vector<bool> axis_flags_;
  std::vector<LogPiece> pieces_;
  SamplingOptions sampling_;
};

/// Builds a domain from a union of pieces. Axis flags default to the
/// coordinates along which some piece recedes toward z_j = 0.
ReinhardtDomain domain_from_pieces(int n, std::vector<LogPiece> pieces,
                                   std::optional<std::vector<bool>> axis_flags = std::nullopt,
                                   SamplingOptions sampling = {});

/// Builds a domain from a raw shadow sample.
ReinhardtDomain domain_from_samples(std::vector<Eigen::VectorXd> points, std::set<int> recession,
                                    std::optional<std::vector<bool>> axis_flags = std::nullopt);

Eigen::VectorXd log_map(const Point<double>& z);

LogShadow log_convex_hull(const LogShadow& shadow);

ReinhardtDomain relative_completion(const ReinhardtDomain& domain);

/// Smallest relatively complete log-convex Reinhardt domain containing the input.
ReinhardtDomain envelope(const ReinhardtDomain& domain);

bool shadow_contains(const LogShadow& shadow, const Eigen::VectorXd& x, double margin = kGeomMargin);

bool contains(const ReinhardtDomain& domain, const Point<double>& z, double margin = kGeomMargin);

/// Finite window {|alpha_j| <= bound, alpha_j >= 0 where the domain meets z_j = 0}.
std::vector<MultiIndex> smooth_monomial_set(const ReinhardtDomain& domain, int bound);

/// Log form of |e_alpha(zeta)| <= max_K |e_alpha| over the box |alpha_j| <= alpha_box.
bool monomial_hull_membership(const std::vector<Point<double>>& K, const Point<double>& zeta,
                              int alpha_box);

/// Coordinates j for which the closure of the domain meets {z_j = 0}.
std::vector<bool> closure_axis_contact(const ReinhardtDomain& domain);

/// Generators (integer) of the recession cone {d : A d <= 0} of a piece.
std::vector<std::vector<long long>> recession_rays(const LogPiece& piece, int n);

/// Deepest point of the shadow inside a window of width log 4 toward the
/// unbounded sides; exp(center) is the default extraction radius.
geometry::ChebyshevBall extraction_ball(const ReinhardtDomain& domain);

/// Deterministic points strictly inside the domain (quasi-random in the log window).
std::vector<Point<double>> sample_interior(const ReinhardtDomain& domain, std::size_t count,
                                           double margin = 1e-6);

/// Points of the exact description of a piece clipped to the sampling box.
std::vector<Eigen::VectorXd> sample_piece(const LogPiece& piece, int n, const SamplingOptions& opts);

}  // namespace rlab
