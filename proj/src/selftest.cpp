#include "rlab/selftest.hpp"

#include "rlab/corpus.hpp"
#include "rlab/io.hpp"
#include "rlab/laurent.hpp"
#include "rlab/morera.hpp"
#include "rlab/parallel.hpp"
#include "rlab/torus_fourier.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace rlab::selftest {

namespace {

using cd = std::complex<double>;
using cld = std::complex<long double>;
using io::json;
using io::number;
constexpr double kPi = std::numbers::pi;

json bound(double value, double tolerance) { return {{"value", number(value)}, {"tolerance", number(tolerance)}}; }

// ---------------------------------------------------------------------------

struct CorpusCase {
  const char* name;
  ComplexFunction<double> f;
  ReinhardtDomain domain;
};

// Points with |z_j| = s r_j inside the extraction polytorus: s in [0.1, 0.9]
// where the domain reaches z_j = 0, s in [0.8, 1.3] on an annular coordinate.
std::vector<Point<double>> polytorus_points(const ReinhardtDomain& d, const Eigen::VectorXd& r, std::size_t count) {
  static constexpr unsigned kBases[] = {2, 3, 5, 7, 11, 13};
  std::vector<Point<double>> out;
  const int n = d.dimension();
  for (std::size_t k = 1; out.size() < count; ++k) {
    Point<double> z(n);
    for (int j = 0; j < n; ++j) {
      const double u = halton(k, kBases[2 * j]), v = halton(k, kBases[2 * j + 1]);
      const double s = d.axis_flags()[static_cast<std::size_t>(j)] ? 0.1 + 0.8 * u : 0.8 + 0.5 * u;
      z[j] = std::polar(s * r[j], 2 * kPi * v);
    }
    if (contains(d, z)) out.push_back(z);
  }
  return out;
}

Criterion laurent_reconstruction() {
  Criterion c{1, "Laurent reconstruction on the corpus", true, json::object()};
  const double tol = 1e-8;
  std::vector<CorpusCase> cases{
      {"1/(1-z)", [](const Point<double>& z) { return 1.0 / (1.0 - z[0]); }, corpus::unit_disc()},
      {"exp(z)", [](const Point<double>& z) { return std::exp(z[0]); }, corpus::unit_disc()},
      {"1/z on the annulus", [](const Point<double>& z) { return 1.0 / z[0]; }, corpus::annulus()},
      {"1/(1-z1 z2)", [](const Point<double>& z) { return 1.0 / (1.0 - z[0] * z[1]); }, corpus::unit_bidisc()},
      {"1/(2-z1-z2)", [](const Point<double>& z) { return 1.0 / (2.0 - z[0] - z[1]); }, corpus::hartogs_figure()},
  };
  json rows = json::array();
  for (const auto& cs : cases) {
    const auto s = laurent_coefficients(cs.f, cs.domain, 24, 256);
    const auto hat = envelope(cs.domain);
    double worst = 0, worst_tail = 0;
    for (const auto& z : polytorus_points(cs.domain, s.extraction_radii, 100)) {
      const auto v = evaluate_series(s, z, hat);
      worst = std::max(worst, std::abs(v.value - cs.f(z)));
      worst_tail = std::max(worst_tail, v.tail_bound);
    }
    const bool ok = worst <= tol && s.holomorphic;
    c.passed = c.passed && ok;
    rows.push_back({{"function", cs.name},
                    {"points", 100},
                    {"max_error", bound(worst, tol)},
                    {"max_tail_bound", number(worst_tail)},
                    {"holomorphy_residual", number(s.holomorphy_residual)},
                    {"passed", ok}});
  }
  c.measured = {{"grid_m", 256}, {"alpha_box", 24}, {"cases", rows}};
  return c;
}

Criterion hartogs_extension() {
  Criterion c{2, "Hartogs extension to the bidisc", false, json::object()};
  const ComplexFunction<double> f = [](const Point<double>& z) { return 1.0 / (2.0 - z[0] - z[1]); };
  const auto fig = corpus::hartogs_figure();
  const auto s = laurent_coefficients(f, fig, 24, 256);
  Point<double> z(2);
  z << 0.6, 0.3;
  const auto hat = envelope(fig);
  const bool outside = !contains(fig, z), inside_hat = contains(hat, z);
  const auto v = evaluate_series(s, z, hat);
  const double err = std::abs(v.value - 1.0 / 1.1);
  c.passed = outside && inside_hat && err <= 1e-6;
  c.measured = {{"point", {0.6, 0.3}},
                {"outside_figure", outside},
                {"inside_envelope", inside_hat},
                {"extraction_radii", {s.extraction_radii[0], s.extraction_radii[1]}},
                {"value", io::complex_to_json(v.value)},
                {"error_vs_closed_form", bound(err, 1e-6)},
                {"tail_bound", number(v.tail_bound)}};
  return c;
}

double vertex_set_distance(const std::vector<Eigen::VectorXd>& a, const std::vector<Eigen::VectorXd>& b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, (a[i] - b[i]).lpNorm<Eigen::Infinity>());
  return worst;
}

Criterion envelope_geometry() {
  Criterion c{3, "Envelope geometry", false, json::object()};
  const auto fig = corpus::hartogs_figure();
  const auto hat = envelope(fig);
  std::size_t inside = 0;
  const auto pts = sample_interior(corpus::unit_bidisc(), 1000);
  for (const auto& z : pts) inside += contains(hat, z) ? 1 : 0;
  const auto twice = envelope(hat);
  const double idem = vertex_set_distance(*hat.shadow().hull_vertices, *twice.shadow().hull_vertices);
  const bool same_recession = hat.shadow().recession_directions == twice.shadow().recession_directions;

  const auto tri = corpus::hartogs_triangle();
  const auto tri_hat = envelope(tri);
  const auto tri_hull = log_convex_hull(tri.shadow());
  const double tri_dist = vertex_set_distance(*tri_hat.shadow().hull_vertices, *tri_hull.hull_vertices);
  const bool tri_recession = tri_hat.shadow().recession_directions == tri_hull.recession_directions;

  c.passed = inside == pts.size() && idem <= 1e-9 && same_recession && tri_dist <= 1e-9 && tri_recession;
  c.measured = {{"bidisc_points_inside_envelope", inside},
                {"bidisc_points", pts.size()},
                {"idempotence_vertex_distance", bound(idem, 1e-9)},
                {"idempotence_recession_equal", same_recession},
                {"triangle_envelope_vertex_distance", bound(tri_dist, 1e-9)},
                {"triangle_recession_equal", tri_recession},
                {"triangle_hull_vertices", tri_hull.hull_vertices->size()}};
  return c;
}

Criterion fejer_means() {
  Criterion c{4, "Cesaro means of square partial sums", false, json::object()};
  const std::size_t m = 256;
  const auto grid = TorusGrid<double>::uniform(1, m);
  const auto g = sample<double>(
      [](const Point<double>& z) {
        double t = std::arg(z[0]);
        if (t < 0) t += 2 * kPi;
        return cd(std::abs(t - kPi));
      },
      grid, true);
  json errors = json::array();
  double previous = INFINITY, last = 0;
  bool monotone = true;
  for (int N : {8, 16, 32, 64}) {
    const auto cn = cesaro_fejer_sum(g, N);
    double err = 0;
    for (std::size_t i = 0; i < m; ++i) err = std::max(err, std::abs(cn.values[i] - g.values[i]));
    monotone = monotone && err < previous;
    previous = last = err;
    errors.push_back({{"N", N}, {"sup_node_error", number(err)}});
  }
  json kernel = json::array();
  bool kernel_ok = true;
  for (int N : {0, 4, 8, 32}) {
    double lo = INFINITY, mean = 0;
    for (std::size_t l = 0; l < m; ++l) {
      const double k = fejer_kernel<double>(N, {grid.angle(l)});
      lo = std::min(lo, k);
      mean += k;
    }
    mean /= static_cast<double>(m);
    const bool ok = lo >= 0 && std::abs(mean - 1) <= 1e-12;
    kernel_ok = kernel_ok && ok;
    kernel.push_back({{"N", N}, {"min", number(lo)}, {"mean_minus_one", bound(mean - 1, 1e-12)}, {"passed", ok}});
  }
  c.passed = monotone && last <= 0.02 && kernel_ok;
  c.measured = {{"profile", "|theta - pi|"},
                {"grid_m", m},
                {"errors", errors},
                {"monotone", monotone},
                {"error_at_64", bound(last, 0.02)},
                {"kernel", kernel}};
  return c;
}

Criterion cauchy_inequalities() {
  Criterion c{5, "Cauchy inequalities on random trigonometric polynomials", false, json::object()};
  std::mt19937_64 rng(5);
  const int box = 16;
  std::size_t violations = 0, checks = 0;
  double worst = 0, worst_ratio = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 2;
    std::vector<std::pair<MultiIndex, cd>> terms;
    for (int t = 0; t < 8; ++t) {
      MultiIndex a(std::vector<int>(static_cast<std::size_t>(n)));
      for (auto& e : a.exponents) e = static_cast<int>(rng() % (2 * box + 1)) - box;
      terms.push_back({a, cd(unit_interval(rng()) - 0.5, unit_interval(rng()) - 0.5)});
    }
    const ComplexFunction<double> f = [&terms](const Point<double>& z) {
      cd s = 0;
      for (const auto& [a, coef] : terms) s += coef * monomial(a, z);
      return s;
    };
    std::vector<VectorX<double>> radii;
    for (double r : {0.3, 0.6, 0.9}) radii.push_back(VectorX<double>::Constant(n, r));
    const auto rep = cauchy_inequality_check(f, box, TorusGrid<double>::uniform(n, 64), radii);
    violations += rep.max_violation > 1e-10 ? 1 : 0;
    worst = std::max(worst, rep.max_violation);
    worst_ratio = std::max(worst_ratio, rep.max_ratio);
    checks += rep.checks;
  }
  c.passed = violations == 0;
  c.measured = {{"polynomials", 100},
                {"alpha_box", box},
                {"checks", checks},
                {"violations_above_tolerance", violations},
                {"max_violation", bound(worst, 1e-10)},
                {"max_ratio", number(worst_ratio)}};
  return c;
}

Criterion mean_value() {
  Criterion c{6, "Circle averages of monomials", false, json::object()};
  std::mt19937_64 rng(6);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    MultiIndex alpha(std::vector<int>(static_cast<std::size_t>(n)));
    Point<double> z(n);
    VectorX<double> rho(n);
    for (int j = 0; j < n; ++j) {
      alpha[static_cast<std::size_t>(j)] = static_cast<int>(rng() % 9) - 4;
      z[j] = std::polar(0.5 + 1.5 * unit_interval(rng()), 2 * kPi * unit_interval(rng()));
      // Negative exponents alias like binom(m + |a| - 1, |a| - 1) (rho / |z|)^m.
      const double reach = alpha[static_cast<std::size_t>(j)] < 0 ? 0.95 : 2.0;
      rho[j] = reach * std::abs(z[j]) * unit_interval(rng());
    }
    worst = std::max(worst, std::abs(circle_average(alpha, z, rho, 2048) - monomial(alpha, z)));
  }
  c.passed = worst <= 1e-10;
  c.measured = {{"cases", 200},
                {"grid_m", 2048},
                {"max_rho_ratio_negative_exponents", 0.95},
                {"max_error", bound(worst, 1e-10)}};
  return c;
}

// int_0^1 r^k dr is finite iff k > -1.
bool radial_integral_finite(long long k) { return k > -1; }

// Iterated radial integral over 0 < r1 < r2 < 1 of r1^(2 a1 + 1) r2^(2 a2 + 1).
bool triangle_oracle(int a1, int a2) {
  const long long k1 = 2LL * a1 + 1, k2 = 2LL * a2 + 1;
  return radial_integral_finite(k1) && radial_integral_finite(k2 + k1 + 1);
}

Criterion missing_monomials() {
  Criterion c{7, "Missing monomials in Bergman spaces", false, json::object()};
  const auto tri = missing_monomials_bergman(corpus::hartogs_triangle(), BergmanWeight::unweighted(2, 2), 6);
  std::size_t rule_mismatch = 0, oracle_mismatch = 0;
  for (const auto& [a, v] : tri.verdicts) {
    const bool integrable = v == Integrability::Integrable;
    rule_mismatch += integrable != (a[0] >= 0 && a[0] + a[1] >= -1);
    oracle_mismatch += integrable != triangle_oracle(a[0], a[1]);
  }
  const auto disc = missing_monomials_bergman(corpus::unit_disc(), BergmanWeight::unweighted(2, 1), 6);
  std::size_t disc_mismatch = 0;
  for (const auto& [a, v] : disc.verdicts)
    disc_mismatch += (v == Integrability::Integrable) != (a[0] >= 0 && radial_integral_finite(2LL * a[0] + 1));
  c.passed = rule_mismatch == 0 && oracle_mismatch == 0 && disc_mismatch == 0 && tri.indeterminate == 0 &&
             tri.verdicts.size() == 169 && disc.verdicts.size() == 13;
  c.measured = {{"triangle_method", tri.method},
                {"triangle_exponents", tri.verdicts.size()},
                {"triangle_integrable", tri.integrable.size()},
                {"triangle_mismatch_vs_rule", rule_mismatch},
                {"triangle_mismatch_vs_radial_oracle", oracle_mismatch},
                {"disc_exponents", disc.verdicts.size()},
                {"disc_mismatch", disc_mismatch}};
  return c;
}

Criterion morera_pompeiu() {
  Criterion c{8, "Morera, Goursat and Pompeiu checks", false, json::object()};
  const ScalarFunction<double> conj = [](cd z) { return std::conj(z); };
  double areolar_worst = 0;
  for (std::size_t k = 1; k <= 20; ++k) {
    const cd w(2 * halton(k, 2) - 1, 2 * halton(k, 3) - 1);
    areolar_worst = std::max(areolar_worst, std::abs(areolar_derivative(conj, w).value - cd(0, 2)));
  }
  const Region sq{-1, 1, -1, 1};
  const auto good = morera_test<double>([](cd z) { return std::exp(z); }, sq);
  const auto bad = morera_test<double>([](cd z) { return z + 0.01 * std::conj(z); }, sq);
  const double bad_rel = std::abs(bad.worst_residual - 0.02) / 0.02;
  const Triangle<double> t(cd(0.1, 0.1), cd(0.9, 0.2), cd(0.3, 0.8));
  const auto trace = goursat_subdivide(conj, t, 20);
  double ratio_worst = 0;
  for (double r : trace.ratios) ratio_worst = std::max(ratio_worst, std::abs(r - 2));
  const bool full_depth = trace.ratios.size() == 21;
  const auto loop = contour_integral<double>([](cd z) { return 1.0 / z; }, Triangle<double>(cd(-1, -1), cd(2, -0.5), cd(-0.5, 1.5)));
  const double loop_err = std::abs(loop.value - cd(0, 2 * kPi));

  c.passed = areolar_worst <= 1e-8 && good.passed && !bad.passed && bad_rel <= 0.1 && full_depth &&
             ratio_worst <= 1e-9 && loop_err <= 1e-10;
  c.measured = {{"areolar_conj_max_error", bound(areolar_worst, 1e-8)},
                {"morera_exp_passed", good.passed},
                {"morera_exp_residual", bound(good.worst_residual, good.tolerance)},
                {"morera_perturbed_passed", bad.passed},
                {"morera_perturbed_residual", number(bad.worst_residual)},
                {"morera_perturbed_relative_offset", bound(bad_rel, 0.1)},
                {"goursat_levels", trace.ratios.size()},
                {"goursat_ratio_max_offset", bound(ratio_worst, 1e-9)},
                {"inverse_loop_error", bound(loop_err, 1e-10)}};
  return c;
}

Criterion taylor_from_morera_check() {
  Criterion c{9, "Taylor coefficients from Morera functions", false, json::object()};
  const ScalarFunction<long double> f = [](cld z) { return std::exp(z); };
  const auto t = taylor_from_morera(f, 12, 64);
  double coef_worst = 0;
  long double factorial = 1;
  for (int n = 0; n <= 12; ++n) {
    if (n > 0) factorial *= n;
    coef_worst = std::max(coef_worst, static_cast<double>(std::abs(t.coefficients[static_cast<std::size_t>(n)] * factorial - 1.0L)));
  }
  const ComplexFunction<long double> g = [](const Point<long double>& z) { return std::exp(z[0]); };
  std::vector<VectorX<long double>> radii;
  for (long double r : {0.3L, 0.5L, 0.7L}) radii.push_back(VectorX<long double>::Constant(1, r));
  double radius_worst = 0;
  for (int a = 0; a <= 12; ++a)
    radius_worst = std::max(radius_worst, static_cast<double>(radius_independence_residual(g, corpus::unit_disc(), {a}, radii, 64)));
  const double neg = static_cast<double>(t.negative_mode_residual);
  const bool morera_ok = t.morera && t.morera->passed;
  c.passed = coef_worst <= 1e-9 && neg <= 1e-12 && radius_worst <= 1e-10 && morera_ok;
  c.measured = {{"precision", "long double"},
                {"extraction_radius", number(static_cast<double>(t.radius))},
                {"coefficient_max_relative_error", bound(coef_worst, 1e-9)},
                {"negative_mode_residual", bound(neg, 1e-12)},
                {"radius_independence_residual", bound(radius_worst, 1e-10)},
                {"morera_passed", morera_ok}};
  return c;
}

}  // namespace

std::vector<int> ids() { return {1, 2, 3, 4, 5, 6, 7, 8, 9}; }

Criterion run(int id) {
  switch (id) {
    case 1: return laurent_reconstruction();
    case 2: return hartogs_extension();
    case 3: return envelope_geometry();
    case 4: return fejer_means();
    case 5: return cauchy_inequalities();
    case 6: return mean_value();
    case 7: return missing_monomials();
    case 8: return morera_pompeiu();
    case 9: return taylor_from_morera_check();
    default: throw PreconditionError("selftest: unknown check " + std::to_string(id));
  }
}

std::vector<Criterion> run_all() {
  std::vector<Criterion> out;
  for (int id : ids()) out.push_back(run(id));
  return out;
}

nlohmann::json to_json(const Criterion& c) {
  return {{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"measured", c.measured}};
}

}  // namespace rlab::selftest
