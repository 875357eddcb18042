#include "rlab/cli.hpp"

#include "rlab/corpus.hpp"
#include "rlab/expression.hpp"
#include "rlab/io.hpp"
#include "rlab/laurent.hpp"
#include "rlab/morera.hpp"
#include "rlab/parallel.hpp"
#include "rlab/selftest.hpp"
#include "rlab/torus_fourier.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#ifndef RLAB_VERSION
#define RLAB_VERSION "unknown"
#endif

namespace rlab::cli {

namespace {

using io::json;
using io::number;
using cd = std::complex<double>;

json bound(double value, double tolerance) { return {{"value", number(value)}, {"tolerance", number(tolerance)}}; }

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) out.push_back(number(v[j]));
  return out;
}

json vertices_json(const std::vector<Eigen::VectorXd>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(vector_json(v));
  return out;
}

json point_json(const Point<double>& z) {
  json out = json::array();
  for (Eigen::Index j = 0; j < z.size(); ++j) out.push_back(io::complex_to_json(z[j]));
  return out;
}

json triangle_json(const Triangle<double>& t) {
  json out = json::array();
  for (const auto& v : t.vertices) out.push_back(io::complex_to_json(v));
  return out;
}

cd constant(const std::string& text) { return Expression::parse(text, 0).constant(); }

int function_dimension(const ExperimentConfig& c) {
  if (c.domain_spec) return c.domain_spec->at("n").get<int>();
  if (!c.radii.empty() && c.command == "fejer") return static_cast<int>(c.radii.size());
  return 1;
}

Point<double> parse_point(const std::vector<std::string>& parts) {
  Point<double> z(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t j = 0; j < parts.size(); ++j) z[static_cast<Eigen::Index>(j)] = constant(parts[j]);
  return z;
}

Region region_of(const ExperimentConfig& c) { return {c.region[0], c.region[1], c.region[2], c.region[3]}; }

Triangle<double> triangle_of(const ExperimentConfig& c) {
  if (c.triangle.empty()) return Triangle<double>(cd(0.1, 0.1), cd(0.9, 0.2), cd(0.3, 0.8));
  return Triangle<double>::ccw(constant(c.triangle[0]), constant(c.triangle[1]), constant(c.triangle[2]));
}

std::string csv_text(const auto& writer) {
  std::ostringstream s;
  writer(s);
  return s.str();
}

bool needs(const std::string& command, std::initializer_list<const char*> list) {
  for (const char* c : list)
    if (command == c) return true;
  return false;
}

// Commands ------------------------------------------------------------------

RunReport run_hull(const ExperimentConfig& c) {
  RunReport r;
  const auto d = io::domain_from_json(*c.domain_spec);
  const auto hull = log_convex_hull(d.shadow());
  json facets = json::array();
  for (const auto& f : hull.polyhedron.facets) facets.push_back({{"normal", vector_json(f.normal)}, {"offset", number(f.offset)}});
  double excess = 0;
  for (const auto& x : d.shadow().points)
    for (const auto& f : hull.polyhedron.facets) excess = std::max(excess, f.normal.dot(x) - f.offset);
  r.results = {{"dimension", d.dimension()},
               {"axis_flags", d.axis_flags()},
               {"recession", std::vector<int>(hull.recession_directions.begin(), hull.recession_directions.end())},
               {"hull_vertices", vertices_json(*hull.hull_vertices)},
               {"facets", facets},
               {"sample_points", d.shadow().points.size()}};
  r.certificates = {{"sample_in_hull_max_excess", bound(excess, 1e-9)}};
  r.success = excess <= 1e-9;
  r.csv.emplace_back("hull_vertices.csv", csv_text([&](std::ostream& s) { io::write_vertices_csv(s, *hull.hull_vertices); }));
  return r;
}

RunReport run_envelope(const ExperimentConfig& c) {
  RunReport r;
  const auto d = io::domain_from_json(*c.domain_spec);
  const auto hat = envelope(d);
  const auto pts = sample_interior(d, 1000);
  std::size_t inside = 0;
  for (const auto& z : pts) inside += contains(hat, z) ? 1 : 0;
  const auto twice = envelope(hat);
  const auto& v1 = *hat.shadow().hull_vertices;
  const auto& v2 = *twice.shadow().hull_vertices;
  double idem = v1.size() == v2.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; std::isfinite(idem) && i < v1.size(); ++i)
    idem = std::max(idem, (v1[i] - v2[i]).lpNorm<Eigen::Infinity>());
  r.results = {{"envelope", io::domain_to_json(hat)},
               {"hull_vertices", vertices_json(v1)},
               {"recession", std::vector<int>(hat.shadow().recession_directions.begin(), hat.shadow().recession_directions.end())}};
  if (!c.point.empty()) {
    const auto z = parse_point(c.point);
    r.results["point"] = point_json(z);
    r.results["point_in_domain"] = contains(d, z);
    r.results["point_in_envelope"] = contains(hat, z);
  }
  r.certificates = {{"domain_samples_in_envelope", inside},
                    {"domain_samples", pts.size()},
                    {"idempotence_vertex_distance", bound(idem, 1e-9)}};
  r.success = inside == pts.size() && idem <= 1e-9;
  r.csv.emplace_back("envelope_vertices.csv", csv_text([&](std::ostream& s) { io::write_vertices_csv(s, v1); }));
  return r;
}

LaurentSeries<double> extract(const ExperimentConfig& c, const ReinhardtDomain& d, const ComplexFunction<double>& f) {
  ExtractionOptions opts;
  if (!c.radii.empty()) opts.radii = c.radii;
  if (c.tol && c.command == "laurent") opts.holomorphy_threshold = *c.tol;
  return laurent_coefficients(f, d, c.alpha_box, c.grid_m, opts);
}

json series_certificates(const LaurentSeries<double>& s, const ExtractionOptions& defaults, double threshold) {
  return {{"holomorphy_residual", bound(s.holomorphy_residual, threshold)},
          {"missing_monomial_residual", bound(s.missing_monomial_residual, defaults.missing_monomial_tol)},
          {"tail_bound", number(s.tail_bound)},
          {"noise_floor", number(s.noise_floor)}};
}

RunReport run_laurent(const ExperimentConfig& c) {
  RunReport r;
  const auto d = io::domain_from_json(*c.domain_spec);
  const auto f = Expression::parse(*c.function_expr, d.dimension()).function<double>();
  const auto s = extract(c, d, f);
  const auto decay = coefficient_decay_report(s, s.extraction_radii);
  r.results = {{"series", io::series_to_json(s)},
               {"decay", {{"rate", number(decay.decay_rate)},
                          {"super_geometric", decay.super_geometric},
                          {"finite_support", decay.finite_support},
                          {"last_nonzero_order", decay.last_nonzero_order}}}};
  r.certificates = series_certificates(s, {}, c.tol.value_or(ExtractionOptions{}.holomorphy_threshold));
  r.success = s.holomorphic && !s.missing_monomial_violation;
  r.csv.emplace_back("decay.csv", csv_text([&](std::ostream& o) { io::write_decay_csv(o, decay); }));
  return r;
}

RunReport run_extend(const ExperimentConfig& c) {
  RunReport r;
  const auto d = io::domain_from_json(*c.domain_spec);
  const auto expr = Expression::parse(*c.function_expr, d.dimension());
  const auto f = expr.function<double>();
  const auto z = parse_point(c.point);
  const auto s = extract(c, d, f);
  const auto hat = envelope(d);
  const bool in_domain = contains(d, z), in_hat = contains(hat, z);
  r.results = {{"point", point_json(z)},
               {"inside_domain", in_domain},
               {"inside_envelope", in_hat},
               {"extraction_radii", vector_json(s.extraction_radii)},
               {"alpha_box", c.alpha_box}};
  r.certificates = series_certificates(s, {}, ExtractionOptions{}.holomorphy_threshold);
  if (!in_hat) {
    r.results["error"] = "point lies outside the envelope";
    r.success = false;
    return r;
  }
  const double tol = c.tol.value_or(1e-8);
  const auto v = evaluate_series(s, z, hat, tol);
  r.results["value"] = io::complex_to_json(v.value);
  r.certificates["series_tail_bound"] = bound(v.tail_bound, tol);
  r.certificates["divergent"] = v.divergent;
  try {
    const cd direct = expr.evaluate(z);
    if (std::isfinite(direct.real()) && std::isfinite(direct.imag()))
      r.certificates["difference_from_direct_evaluation"] = number(std::abs(direct - v.value));
  } catch (const Error&) {
  }
  r.success = s.holomorphic && !v.flagged;
  return r;
}

RunReport run_fejer(const ExperimentConfig& c) {
  RunReport r;
  const int n = function_dimension(c);
  const auto f = Expression::parse(*c.function_expr, n).function<double>();
  Eigen::VectorXd radii = Eigen::VectorXd::Ones(n);
  for (std::size_t j = 0; j < c.radii.size(); ++j) radii[static_cast<Eigen::Index>(j)] = c.radii[j];
  const TorusGrid<double> grid(n, c.grid_m, radii);
  const auto g = sample(f, grid);
  const int N = c.order;
  const auto cn = cesaro_fejer_sum(g, N);
  const auto sn = square_partial_sum(g, N);
  auto gap = [](const GridFunction<double>& a, const GridFunction<double>& b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    return worst;
  };
  const double c0_s0 = gap(cesaro_fejer_sum(g, 0), square_partial_sum(g, 0));
  double kmin = INFINITY, kmean = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> theta;
    for (auto k : grid.index(i)) theta.push_back(grid.angle(k));
    const double k = fejer_kernel(N, theta);
    kmin = std::min(kmin, k);
    kmean += k;
  }
  kmean /= static_cast<double>(grid.size());
  r.results = {{"N", N},
               {"dimension", n},
               {"cesaro_sup_error", number(gap(cn, g))},
               {"partial_sum_sup_error", number(gap(sn, g))},
               {"kernel_min_on_nodes", number(kmin)}};
  r.certificates = {{"c0_minus_s0", bound(c0_s0, 1e-14)}, {"kernel_mean_minus_one", bound(kmean - 1, 1e-12)}};
  bool conv_ok = true;
  // The direct convolution costs size^2 evaluations.
  if (grid.size() <= 4096) {
    const double agree = gap(cn, cesaro_fejer_convolution(g, N));
    r.certificates["convolution_agreement"] = bound(agree, 1e-10);
    conv_ok = agree <= 1e-10;
  }
  r.success = conv_ok && std::abs(kmean - 1) <= 1e-12 && c0_s0 <= 1e-14;
  r.csv.emplace_back("fejer_kernel.csv", csv_text([&](std::ostream& o) { io::write_fejer_kernel_csv(o, N, 513); }));
  r.csv.emplace_back("cesaro.csv", csv_text([&](std::ostream& o) { io::write_grid_csv(o, cn); }));
  return r;
}

RunReport run_missing(const ExperimentConfig& c) {
  RunReport r;
  const auto d = io::domain_from_json(*c.domain_spec);
  const auto weight = c.weight.empty() ? BergmanWeight::unweighted(c.p, d.dimension()) : BergmanWeight::power_law(c.p, c.weight);
  const auto v = missing_monomials_bergman(d, weight, c.alpha_box);
  json verdicts = json::array();
  for (const auto& [a, verdict] : v.verdicts) verdicts.push_back({{"alpha", io::to_json(a)}, {"verdict", to_string(verdict)}});
  const auto smooth = missing_monomials_smooth_boundary(d, c.alpha_box);
  json allowed = json::array();
  for (const auto& a : smooth.allowed) allowed.push_back(io::to_json(a));
  r.results = {{"bergman", {{"p", c.p}, {"method", v.method}, {"verdicts", verdicts}, {"integrable_count", v.integrable.size()}}},
               {"smooth_boundary", {{"nonnegative", smooth.nonnegative}, {"allowed", allowed}}}};
  r.certificates = {{"indeterminate", v.indeterminate}};
  return r;
}

json trace_json(const SubdivisionTrace<double>& t) {
  json levels = json::array();
  for (std::size_t k = 0; k < t.triangles.size(); ++k) {
    json level{{"level", k},
               {"triangle", triangle_json(t.triangles[k])},
               {"integral", io::complex_to_json(t.integrals[k])},
               {"ratio", k < t.ratios.size() ? number(t.ratios[k]) : json(nullptr)}};
    if (k < t.chosen_child.size()) level["chosen_child"] = t.chosen_child[k];
    if (k < t.additivity_residuals.size()) level["additivity_residual"] = number(t.additivity_residuals[k]);
    levels.push_back(level);
  }
  return {{"levels", levels},
          {"witness", io::complex_to_json(t.witness)},
          {"terminated_early", t.terminated_early},
          {"additivity_ok", t.additivity_ok}};
}

RunReport run_morera_scan(const ExperimentConfig& c) {
  RunReport r;
  const auto f = Expression::parse(*c.function_expr, 1).scalar<double>();
  MoreraOptions opts;
  opts.triangle_budget = c.budget;
  opts.tol = c.tol;
  opts.goursat_depth = c.depth;
  const auto v = morera_test(f, region_of(c), opts);
  r.results = {{"passed", v.passed},
               {"triangles_tested", v.triangles_tested},
               {"sup_norm", number(v.sup_norm)},
               {"nonfinite_samples", v.nonfinite_samples}};
  if (v.worst_triangle) r.results["worst_triangle"] = triangle_json(*v.worst_triangle);
  if (v.trace) r.results["goursat_trace"] = trace_json(*v.trace);
  r.certificates = {{"worst_residual", bound(v.worst_residual, v.tolerance)}};
  r.success = v.passed;
  return r;
}

RunReport run_pompeiu(const ExperimentConfig& c) {
  RunReport r;
  const auto f = Expression::parse(*c.function_expr, 1).scalar<double>();
  const Region reg = region_of(c);
  const cd w = c.point.empty() ? cd((reg.x0 + reg.x1) / 2, (reg.y0 + reg.y1) / 2) : constant(c.point[0]);
  AreolarOptions opts;
  if (c.tol) opts.tol = *c.tol;
  const auto a = areolar_derivative(f, w, opts);
  json raw = json::array();
  for (std::size_t k = 0; k < a.raw.size(); ++k)
    raw.push_back({{"step", number(a.steps[k])}, {"estimate", io::complex_to_json(a.raw[k])}});
  r.results = {{"point", io::complex_to_json(w)},
               {"areolar_derivative", io::complex_to_json(a.value)},
               {"dbar", io::complex_to_json(a.value / cd(0, 2))},
               {"raw", raw}};
  r.certificates = {{"extrapolation_error", bound(a.error, opts.tol)}, {"converged", a.converged}};
  r.success = a.converged;
  r.csv.emplace_back("areolar.csv", csv_text([&](std::ostream& o) {
    o << "x,y,abs_areolar\n";
    const int side = 21;
    for (int iy = 0; iy < side; ++iy)
      for (int ix = 0; ix < side; ++ix) {
        const double x = reg.x0 + (reg.x1 - reg.x0) * ix / (side - 1), y = reg.y0 + (reg.y1 - reg.y0) * iy / (side - 1);
        double value = std::numeric_limits<double>::quiet_NaN();
        try {
          value = std::abs(areolar_derivative(f, cd(x, y), opts).value);
        } catch (const Error&) {
        }
        o << io::format_double(x) << ',' << io::format_double(y) << ',' << io::format_double(value) << '\n';
      }
  }));
  return r;
}

RunReport run_goursat(const ExperimentConfig& c) {
  RunReport r;
  const auto f = Expression::parse(*c.function_expr, 1).scalar<double>();
  const auto t = goursat_subdivide(f, triangle_of(c), c.depth);
  r.results = trace_json(t);
  double worst = 0;
  for (double a : t.additivity_residuals) worst = std::max(worst, a);
  r.certificates = {{"max_additivity_residual", number(worst)}, {"additivity_ok", t.additivity_ok}};
  r.success = t.additivity_ok;
  r.csv.emplace_back("goursat.csv", csv_text([&](std::ostream& o) {
    o << "level,ratio,abs_integral,centroid_x,centroid_y\n";
    for (std::size_t k = 0; k < t.triangles.size(); ++k) {
      const cd g = t.triangles[k].centroid();
      o << k << ',' << (k < t.ratios.size() ? io::format_double(t.ratios[k]) : "") << ','
        << io::format_double(std::abs(t.integrals[k])) << ',' << io::format_double(g.real()) << ','
        << io::format_double(g.imag()) << '\n';
    }
  }));
  return r;
}

RunReport run_selftest(const ExperimentConfig&) {
  RunReport r;
  json list = json::array();
  std::size_t passed = 0;
  for (const auto& crit : selftest::run_all()) {
    passed += crit.passed ? 1 : 0;
    list.push_back(selftest::to_json(crit));
  }
  r.results = {{"checks", list}, {"passed", passed}, {"total", list.size()}};
  r.success = passed == list.size();
  return r;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream s(text);
  for (std::string part; std::getline(s, part, ',');) out.push_back(part);
  return out;
}

std::vector<double> split_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& part : split(text)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || part.find_first_not_of(" \t", used) != std::string::npos)
      throw Error(std::string("--") + what + ": '" + part + "' is not a number");
    out.push_back(v);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> list{"hull",    "envelope",    "laurent", "extend",        "fejer",
                                             "missing", "morera-scan", "pompeiu", "goursat-trace", "selftest"};
  return list;
}

void ExperimentConfig::validate() const {
  if (std::find(commands().begin(), commands().end(), command) == commands().end())
    throw Error("unknown command '" + command + "'");
  if (needs(command, {"hull", "envelope", "laurent", "extend", "missing"}) && !domain_spec)
    throw Error(command + " needs --domain");
  if (needs(command, {"laurent", "extend", "fejer", "morera-scan", "pompeiu", "goursat-trace"}) && !function_expr)
    throw Error(command + " needs --fn");
  if (command == "extend" && point.empty()) throw Error("extend needs --point");
  if (grid_m < 4 || (grid_m & (grid_m - 1)) != 0) throw Error("--grid-m must be a power of two >= 4");
  if (tol && !(*tol > 0)) throw Error("--tol must be positive");
  if (alpha_box < 0) throw Error("--alpha-box must be >= 0");
  if (needs(command, {"laurent", "extend"}) && 2 * static_cast<std::size_t>(alpha_box) >= grid_m)
    throw Error("--grid-m must exceed twice --alpha-box");
  if (order < 0) throw Error("--order must be >= 0");
  if (command == "fejer" && 2 * static_cast<std::size_t>(order) >= grid_m) throw Error("--grid-m must exceed twice --order");
  if (depth < 0) throw Error("--depth must be >= 0");
  if (budget < 1) throw Error("--budget must be >= 1");
  if (!(p >= 1)) throw Error("--p must be >= 1");
  if (region.size() != 4 || !(region[0] < region[1]) || !(region[2] < region[3]))
    throw Error("--region must be x0,x1,y0,y1 with x0 < x1 and y0 < y1");
  for (double r : radii)
    if (!(r > 0) || !std::isfinite(r)) throw Error("--radii must be positive");
  std::optional<int> n;
  if (domain_spec) n = io::domain_from_json(*domain_spec).dimension();
  const int dim = function_dimension(*this);
  if (needs(command, {"morera-scan", "pompeiu", "goursat-trace"}) && dim != 1)
    throw Error(command + " works on functions of one variable");
  if (command == "fejer" && (dim < 1 || dim > 3)) throw Error("fejer supports 1 to 3 variables");
  if (function_expr) Expression::parse(*function_expr, needs(command, {"morera-scan", "pompeiu", "goursat-trace"}) ? 1 : dim);
  if (!radii.empty() && n && radii.size() != static_cast<std::size_t>(*n)) throw Error("--radii needs one radius per variable");
  if (!weight.empty() && n && weight.size() != static_cast<std::size_t>(*n)) throw Error("--w needs one exponent per variable");
  for (const auto& part : point) constant(part);
  if (!point.empty() && n && point.size() != static_cast<std::size_t>(*n)) throw Error("--point needs one coordinate per variable");
  if (needs(command, {"pompeiu"}) && point.size() > 1) throw Error("--point needs a single coordinate");
  if (!triangle.empty()) {
    if (triangle.size() != 3) throw Error("--triangle needs three vertices");
    triangle_of(*this);
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"command", command},
          {"domain_spec", domain_spec ? *domain_spec : json(nullptr)},
          {"function_expr", function_expr ? json(*function_expr) : json(nullptr)},
          {"grid_m", grid_m},
          {"alpha_box", alpha_box},
          {"tol", tol ? json(*tol) : json(nullptr)},
          {"order", order},
          {"p", p},
          {"weight", weight},
          {"point", point},
          {"radii", radii},
          {"region", region},
          {"triangle", triangle},
          {"depth", depth},
          {"budget", budget}};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.command = j.at("command").get<std::string>();
  if (j.contains("domain_spec") && !j.at("domain_spec").is_null()) c.domain_spec = j.at("domain_spec");
  if (j.contains("function_expr") && !j.at("function_expr").is_null()) c.function_expr = j.at("function_expr").get<std::string>();
  if (j.contains("tol") && !j.at("tol").is_null()) c.tol = j.at("tol").get<double>();
  auto read = [&j](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  read("grid_m", c.grid_m);
  read("alpha_box", c.alpha_box);
  read("order", c.order);
  read("p", c.p);
  read("weight", c.weight);
  read("point", c.point);
  read("radii", c.radii);
  read("region", c.region);
  read("triangle", c.triangle);
  read("depth", c.depth);
  read("budget", c.budget);
  return c;
}

RunReport run(const ExperimentConfig& c) {
  try {
    if (c.command == "hull") return run_hull(c);
    if (c.command == "envelope") return run_envelope(c);
    if (c.command == "laurent") return run_laurent(c);
    if (c.command == "extend") return run_extend(c);
    if (c.command == "fejer") return run_fejer(c);
    if (c.command == "missing") return run_missing(c);
    if (c.command == "morera-scan") return run_morera_scan(c);
    if (c.command == "pompeiu") return run_pompeiu(c);
    if (c.command == "goursat-trace") return run_goursat(c);
    if (c.command == "selftest") return run_selftest(c);
  } catch (const Error& e) {
    RunReport r;
    r.results = {{"error", e.what()}};
    r.success = false;
    return r;
  }
  throw Error("unknown command '" + c.command + "'");
}

std::string version() { return RLAB_VERSION; }

nlohmann::json report_json(const ExperimentConfig& config, const RunReport& report,
                           std::optional<double> wall_clock_seconds) {
  json out{{"command", config.command},
           {"version", version()},
           {"inputs", config.to_json()},
           {"results", report.results},
           {"certificates", report.certificates},
           {"verdict", report.success ? "success" : "failure"}};
  if (wall_clock_seconds) out["wall_clock_seconds"] = *wall_clock_seconds;
  return out;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reinhardt-domain laboratory: Laurent extraction, envelopes, Fejer means, Morera tests"};
  app.set_version_flag("--version", version());
  ExperimentConfig config;
  std::string domain_file, fn, out_file, csv_dir, point, radii, region, weight, triangle;
  double tol = 0;
  int threads = 0;
  bool no_timestamp = false;
  app.add_option("command", config.command, "What to run")->required()->check(CLI::IsMember(commands()));
  app.add_option("--domain", domain_file, "Domain DSL JSON file");
  app.add_option("--fn", fn, "Function of z1..zn");
  app.add_option("--grid-m", config.grid_m, "Torus nodes per coordinate (power of two)")->capture_default_str();
  app.add_option("--alpha-box", config.alpha_box, "Coefficient box |alpha_j| <= B")->capture_default_str();
  auto* tol_opt = app.add_option("--tol", tol, "Command tolerance");
  app.add_option("--order", config.order, "Fejer order N")->capture_default_str();
  app.add_option("--p", config.p, "Bergman exponent p")->capture_default_str();
  app.add_option("--w", weight, "Power-law weight exponents, comma separated");
  app.add_option("--point", point, "Point, comma-separated complex constants");
  app.add_option("--radii", radii, "Extraction or torus radii, comma separated");
  app.add_option("--region", region, "x0,x1,y0,y1 for Morera and Pompeiu");
  app.add_option("--triangle", triangle, "Three complex vertices, comma separated");
  app.add_option("--depth", config.depth, "Goursat subdivision depth")->capture_default_str();
  app.add_option("--budget", config.budget, "Morera triangle budget")->capture_default_str();
  app.add_option("--out", out_file, "Write the JSON report here instead of stdout");
  app.add_option("--csv-dir", csv_dir, "Directory for CSV side files");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--no-timestamp", no_timestamp, "Omit the wall-clock field");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (!domain_file.empty()) config.domain_spec = io::read_json(domain_file);
    if (!fn.empty()) config.function_expr = fn;
    if (*tol_opt) config.tol = tol;
    if (!point.empty()) config.point = split(point);
    if (!triangle.empty()) config.triangle = split(triangle);
    if (!radii.empty()) config.radii = split_numbers(radii, "radii");
    if (!weight.empty()) config.weight = split_numbers(weight, "w");
    if (!region.empty()) config.region = split_numbers(region, "region");
    config.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (threads > 0) set_thread_count(threads);

  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  try {
    report = run(config);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto doc = report_json(config, report, no_timestamp ? std::nullopt : std::optional<double>(seconds));
  try {
    const std::string text = doc.dump(2) + "\n";
    if (out_file.empty()) {
      out << text;
    } else {
      io::write_text_file(out_file, text);
    }
    if (!csv_dir.empty())
      for (const auto& [name, body] : report.csv) io::write_text_file((std::filesystem::path(csv_dir) / name).string(), body);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (report.results.contains("error")) err << "error: " << report.results["error"].get<std::string>() << '\n';
  return report.success ? kExitSuccess : kExitFailure;
}

}  // namespace rlab::cli
