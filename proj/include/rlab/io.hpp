#pragma once

// JSON and CSV formats for domains, series and grid data.
//
// Domain DSL:
//   {"n": 2,
//    "bounds": [{"alpha": [1, 0], "lt": 1.0}, {"alpha": [0, 1], "gt": 0.5}],
//    "pieces": [{"bounds": [...]}, ...],          (union; instead of "bounds")
//    "points": [[x1, x2], ...], "recession": [0], (raw log-shadow sample)
//    "axis_flags": [true, false],
//    "samples_per_face": 4}
// "gt": c is |z^alpha| > c, stored as |z^-alpha| < 1/c. A "points" shadow is
// read as the convex hull of the sample extended along the recession axes.

#include "rlab/domains.hpp"
#include "rlab/laurent.hpp"
#include "rlab/torus_fourier.hpp"

#include "json.hpp"

#include <charconv>
#include <iosfwd>
#include <string>
#include <vector>

namespace rlab::io {

using nlohmann::json;

ReinhardtDomain domain_from_json(const json& doc);
ReinhardtDomain read_domain(const std::string& path);

/// Description of a domain: its pieces when exact, else the hull vertices.
json domain_to_json(const ReinhardtDomain& domain);

json read_json(const std::string& path);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// Finite numbers as numbers; inf and nan as the strings "inf", "-inf", "nan".
json number(double v);

json to_json(const MultiIndex& alpha);
MultiIndex multi_index_from_json(const json& j);

template <typename Real>
json complex_to_json(std::complex<Real> c) {
  return {{"re", number(static_cast<double>(c.real()))}, {"im", number(static_cast<double>(c.imag()))}};
}

template <typename Real>
json series_to_json(const LaurentSeries<Real>& s) {
  json terms = json::array();
  for (const auto& [alpha, a] : s.coefficients) {
    if (a == std::complex<Real>(0)) continue;
    terms.push_back({{"alpha", to_json(alpha)},
                     {"re", number(static_cast<double>(a.real()))},
                     {"im", number(static_cast<double>(a.imag()))}});
  }
  json radii = json::array();
  for (Eigen::Index j = 0; j < s.extraction_radii.size(); ++j) radii.push_back(number(static_cast<double>(s.extraction_radii[j])));
  json meta{{"dimension", s.dimension},
            {"extraction_radii", radii},
            {"grid_m", s.grid_m},
            {"alpha_box", s.alpha_box},
            {"tail_bound", number(static_cast<double>(s.tail_bound))},
            {"noise_floor", number(static_cast<double>(s.noise_floor))},
            {"sup_norm", number(static_cast<double>(s.sup_norm))},
            {"holomorphy_residual", number(static_cast<double>(s.holomorphy_residual))},
            {"holomorphic", s.holomorphic},
            {"missing_monomial_residual", number(static_cast<double>(s.missing_monomial_residual))},
            {"missing_monomial_violation", s.missing_monomial_violation},
            {"zeroed_count", s.zeroed_count}};
  return {{"terms", terms}, {"metadata", meta}};
}

/// Reads the terms and the extraction metadata back; absent terms are zero.
LaurentSeries<double> series_from_json(const json& j);

// CSV ---------------------------------------------------------------------

/// "# n m r_1 .. r_n" then "k_1,..,k_n,re,im" rows in flat-index order.
void write_grid_csv(std::ostream& out, const GridFunction<double>& g);
GridFunction<double> read_grid_csv(std::istream& in);

/// "RLGF", u32 version, u32 n, u64 m, n radii, then (re, im) pairs; little endian doubles.
void write_grid_binary(std::ostream& out, const GridFunction<double>& g);
GridFunction<double> read_grid_binary(std::istream& in);

void write_decay_csv(std::ostream& out, const DecayReport<double>& r);

/// theta,kernel rows for N over `samples` equispaced angles in [-pi, pi].
void write_fejer_kernel_csv(std::ostream& out, int N, std::size_t samples);

void write_vertices_csv(std::ostream& out, const std::vector<Eigen::VectorXd>& vertices);

/// Writes `body` to path, creating parent directories.
void write_text_file(const std::string& path, const std::string& body);

}  // namespace rlab::io
