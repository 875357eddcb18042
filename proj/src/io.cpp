#include "rlab/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace rlab::io {

namespace {

std::vector<MonomialBound> bounds_from_json(const json& list, int n) {
  if (!list.is_array() || list.empty()) throw DomainError("domain: 'bounds' must be a non-empty array");
  std::vector<MonomialBound> out;
  for (const auto& b : list) {
    MultiIndex alpha = multi_index_from_json(b.at("alpha"));
    if (alpha.size() != static_cast<std::size_t>(n)) throw DomainError("domain: bound exponent has wrong length");
    const bool has_lt = b.contains("lt"), has_gt = b.contains("gt");
    if (has_lt == has_gt) throw DomainError("domain: each bound needs exactly one of 'lt' and 'gt'");
    if (has_lt) {
      out.push_back(MonomialBound::less_than(std::move(alpha), b.at("lt").get<double>()));
    } else {
      const double c = b.at("gt").get<double>();
      if (!(c > 0) || !std::isfinite(c)) throw DomainError("domain: 'gt' must be positive and finite");
      for (auto& a : alpha.exponents) a = -a;
      out.push_back(MonomialBound::less_than(std::move(alpha), 1.0 / c));
    }
  }
  return out;
}

json piece_to_json(const LogPiece& piece) {
  json bounds = json::array();
  for (const auto& b : piece.bounds) bounds.push_back({{"alpha", to_json(b.alpha)}, {"lt", number(std::exp(b.log_bound))}});
  return {{"bounds", bounds}};
}

void write_u32(std::ostream& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

void write_u64(std::ostream& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t read_uint(std::istream& in, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw Error("grid file truncated");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}

void write_f64(std::ostream& out, double v) { write_u64(out, std::bit_cast<std::uint64_t>(v)); }
double read_f64(std::istream& in) { return std::bit_cast<double>(read_uint(in, 8)); }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json to_json(const MultiIndex& alpha) { return alpha.exponents; }

MultiIndex multi_index_from_json(const json& j) {
  if (!j.is_array()) throw Error("multi-index must be an array of integers");
  MultiIndex a;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw Error("multi-index entries must be integers");
    a.exponents.push_back(v.get<int>());
  }
  return a;
}

ReinhardtDomain domain_from_json(const json& doc) {
  if (!doc.is_object()) throw DomainError("domain: description must be a JSON object");
  const int n = doc.at("n").get<int>();
  if (n < 1 || n > 3) throw DomainError("domain: n must be 1, 2 or 3");
  std::optional<std::vector<bool>> flags;
  if (doc.contains("axis_flags")) {
    flags = doc.at("axis_flags").get<std::vector<bool>>();
    if (flags->size() != static_cast<std::size_t>(n)) throw DomainError("domain: axis_flags has wrong length");
  }
  SamplingOptions sampling;
  if (doc.contains("samples_per_face")) sampling.samples_per_face = doc.at("samples_per_face").get<int>();
  if (sampling.samples_per_face < 0) throw DomainError("domain: samples_per_face must be >= 0");

  const int kinds = int(doc.contains("bounds")) + int(doc.contains("pieces")) + int(doc.contains("points"));
  if (kinds != 1) throw DomainError("domain: give exactly one of 'bounds', 'pieces', 'points'");

  if (doc.contains("points")) {
    std::vector<Eigen::VectorXd> pts;
    for (const auto& p : doc.at("points")) {
      const auto v = p.get<std::vector<double>>();
      if (v.size() != static_cast<std::size_t>(n)) throw DomainError("domain: shadow point has wrong length");
      pts.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(), n));
    }
    std::set<int> recession;
    if (doc.contains("recession"))
      for (int j : doc.at("recession").get<std::vector<int>>()) {
        if (j < 0 || j >= n) throw DomainError("domain: recession coordinate out of range");
        recession.insert(j);
      }
    const auto raw = domain_from_samples(std::move(pts), std::move(recession), flags);
    return ReinhardtDomain(log_convex_hull(raw.shadow()), raw.axis_flags());
  }

  std::vector<LogPiece> pieces;
  if (doc.contains("bounds")) {
    pieces.push_back(LogPiece{bounds_from_json(doc.at("bounds"), n)});
  } else {
    const auto& list = doc.at("pieces");
    if (!list.is_array() || list.empty()) throw DomainError("domain: 'pieces' must be a non-empty array");
    for (const auto& p : list) pieces.push_back(LogPiece{bounds_from_json(p.at("bounds"), n)});
  }
  return domain_from_pieces(n, std::move(pieces), flags, sampling);
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("'" + path + "': " + e.what());
  }
}

ReinhardtDomain read_domain(const std::string& path) { return domain_from_json(read_json(path)); }

json domain_to_json(const ReinhardtDomain& domain) {
  json out{{"n", domain.dimension()}, {"axis_flags", domain.axis_flags()}};
  if (!domain.pieces().empty()) {
    json pieces = json::array();
    for (const auto& p : domain.pieces()) pieces.push_back(piece_to_json(p));
    out["pieces"] = pieces;
    return out;
  }
  const auto& shadow = domain.shadow();
  const auto& pts = shadow.hull_vertices ? *shadow.hull_vertices : shadow.points;
  json points = json::array();
  for (const auto& p : pts) {
    json row = json::array();
    for (Eigen::Index j = 0; j < p.size(); ++j) row.push_back(number(p[j]));
    points.push_back(row);
  }
  out["points"] = points;
  out["recession"] = std::vector<int>(shadow.recession_directions.begin(), shadow.recession_directions.end());
  return out;
}

LaurentSeries<double> series_from_json(const json& j) {
  const auto& meta = j.at("metadata");
  LaurentSeries<double> s;
  s.dimension = meta.at("dimension").get<int>();
  s.grid_m = meta.at("grid_m").get<std::size_t>();
  s.alpha_box = meta.at("alpha_box").get<int>();
  const auto radii = meta.at("extraction_radii").get<std::vector<double>>();
  s.extraction_radii = Eigen::Map<const Eigen::VectorXd>(radii.data(), static_cast<Eigen::Index>(radii.size()));
  auto real = [](const json& v) {
    if (v.is_string()) {
      const auto t = v.get<std::string>();
      if (t == "inf") return std::numeric_limits<double>::infinity();
      if (t == "-inf") return -std::numeric_limits<double>::infinity();
      return std::numeric_limits<double>::quiet_NaN();
    }
    return v.get<double>();
  };
  s.tail_bound = real(meta.at("tail_bound"));
  s.noise_floor = real(meta.at("noise_floor"));
  s.sup_norm = real(meta.at("sup_norm"));
  s.holomorphy_residual = real(meta.at("holomorphy_residual"));
  s.holomorphic = meta.at("holomorphic").get<bool>();
  s.missing_monomial_residual = real(meta.at("missing_monomial_residual"));
  s.missing_monomial_violation = meta.at("missing_monomial_violation").get<bool>();
  s.zeroed_count = meta.at("zeroed_count").get<std::size_t>();
  for (const auto& alpha : index_box(static_cast<std::size_t>(s.dimension), s.alpha_box)) s.coefficients[alpha] = 0.0;
  for (const auto& t : j.at("terms")) {
    auto alpha = multi_index_from_json(t.at("alpha"));
    if (alpha.size() != static_cast<std::size_t>(s.dimension) || alpha.linf() > s.alpha_box)
      throw Error("series: term outside the coefficient box");
    s.coefficients[alpha] = {real(t.at("re")), real(t.at("im"))};
  }
  return s;
}

void write_grid_csv(std::ostream& out, const GridFunction<double>& g) {
  g.validate();
  out << "# " << g.grid.n << ' ' << g.grid.m;
  for (Eigen::Index j = 0; j < g.grid.radii.size(); ++j) out << ' ' << format_double(g.grid.radii[j]);
  out << '\n';
  for (int j = 0; j < g.grid.n; ++j) out << 'k' << j + 1 << ',';
  out << "re,im\n";
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    for (auto k : g.grid.index(i)) out << k << ',';
    out << format_double(g.values[i].real()) << ',' << format_double(g.values[i].imag()) << '\n';
  }
}

GridFunction<double> read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw Error("grid csv: missing header");
  std::istringstream head(line.substr(2));
  int n = 0;
  std::size_t m = 0;
  head >> n >> m;
  if (!head || n < 1 || n > 3) throw Error("grid csv: bad header");
  Eigen::VectorXd radii(n);
  for (int j = 0; j < n; ++j) {
    std::string tok;
    head >> tok;
    radii[j] = std::stod(tok);
  }
  GridFunction<double> g{TorusGrid<double>(n, m, radii), {}};
  g.values.resize(g.grid.size());
  std::getline(in, line);
  std::vector<bool> seen(g.values.size(), false);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (cells.size() != static_cast<std::size_t>(n) + 2) throw Error("grid csv: wrong number of columns");
    std::size_t flat = 0, stride = 1;
    for (int j = 0; j < n; ++j) {
      const auto k = std::stoull(cells[static_cast<std::size_t>(j)]);
      if (k >= m) throw Error("grid csv: node index out of range");
      flat += k * stride;
      stride *= m;
    }
    g.values[flat] = {std::stod(cells[static_cast<std::size_t>(n)]), std::stod(cells[static_cast<std::size_t>(n) + 1])};
    seen[flat] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw Error("grid csv: missing nodes");
  return g;
}

void write_grid_binary(std::ostream& out, const GridFunction<double>& g) {
  g.validate();
  out.write("RLGF", 4);
  write_u32(out, 1);
  write_u32(out, static_cast<std::uint32_t>(g.grid.n));
  write_u64(out, g.grid.m);
  for (Eigen::Index j = 0; j < g.grid.radii.size(); ++j) write_f64(out, g.grid.radii[j]);
  for (const auto& v : g.values) {
    write_f64(out, v.real());
    write_f64(out, v.imag());
  }
}

GridFunction<double> read_grid_binary(std::istream& in) {
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "RLGF") throw Error("grid file: bad magic");
  if (read_uint(in, 4) != 1) throw Error("grid file: unsupported version");
  const int n = static_cast<int>(read_uint(in, 4));
  const std::size_t m = read_uint(in, 8);
  if (n < 1 || n > 3) throw Error("grid file: bad dimension");
  Eigen::VectorXd radii(n);
  for (int j = 0; j < n; ++j) radii[j] = read_f64(in);
  GridFunction<double> g{TorusGrid<double>(n, m, radii), {}};
  g.values.resize(g.grid.size());
  for (auto& v : g.values) {
    const double re = read_f64(in);
    v = {re, read_f64(in)};
  }
  return g;
}

void write_decay_csv(std::ostream& out, const DecayReport<double>& r) {
  std::size_t n = r.rows.empty() ? 0 : r.rows.front().alpha.size();
  for (std::size_t j = 0; j < n; ++j) out << 'a' << j + 1 << ',';
  out << "order,seminorm\n";
  for (const auto& row : r.rows) {
    for (int a : row.alpha.exponents) out << a << ',';
    out << row.order << ',' << format_double(row.seminorm) << '\n';
  }
}

void write_fejer_kernel_csv(std::ostream& out, int N, std::size_t samples) {
  if (samples < 2) throw PreconditionError("kernel table needs at least two samples");
  out << "theta,kernel\n";
  const double pi = std::numbers::pi;
  for (std::size_t i = 0; i < samples; ++i) {
    const double theta = -pi + 2 * pi * static_cast<double>(i) / static_cast<double>(samples - 1);
    out << format_double(theta) << ',' << format_double(fejer_kernel<double>(N, {theta})) << '\n';
  }
}

void write_vertices_csv(std::ostream& out, const std::vector<Eigen::VectorXd>& vertices) {
  const Eigen::Index n = vertices.empty() ? 0 : vertices.front().size();
  for (Eigen::Index j = 0; j < n; ++j) out << (j ? "," : "") << 'x' << j + 1;
  out << '\n';
  for (const auto& v : vertices) {
    for (Eigen::Index j = 0; j < n; ++j) out << (j ? "," : "") << format_double(v[j]);
    out << '\n';
  }
}

void write_text_file(const std::string& path, const std::string& body) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << body;
}

}  // namespace rlab::io
