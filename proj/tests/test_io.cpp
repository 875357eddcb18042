#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rlab/corpus.hpp"
#include "rlab/io.hpp"

#include <sstream>

using namespace rlab;
using io::json;

TEST_CASE("domain DSL") {
  SUBCASE("annulus through a lower bound") {
    const auto d = io::domain_from_json(json::parse(R"({"n": 1, "bounds": [{"alpha": [1], "lt": 1}, {"alpha": [1], "gt": 0.5}]})"));
    Point<double> z(1);
    z[0] = 0.7;
    CHECK(contains(d, z));
    z[0] = 0.4;
    CHECK_FALSE(contains(d, z));
    CHECK(d.axis_flags() == std::vector<bool>{false});
  }
  SUBCASE("union of pieces matches the Hartogs figure") {
    const auto d = io::domain_from_json(json::parse(R"({"n": 2, "pieces": [
        {"bounds": [{"alpha": [1, 0], "lt": 1}, {"alpha": [0, 1], "lt": 1}, {"alpha": [0, 1], "gt": 0.5}]},
        {"bounds": [{"alpha": [1, 0], "lt": 0.5}, {"alpha": [0, 1], "lt": 1}]}]})"));
    const auto ref = corpus::hartogs_figure();
    for (const auto& z : sample_interior(ref, 200)) CHECK(contains(d, z));
    CHECK(d.axis_flags() == ref.axis_flags());
  }
  SUBCASE("raw shadow sample") {
    const auto d = io::domain_from_json(
        json::parse(R"({"n": 2, "points": [[0, 0], [-1, 0], [0, -1], [-0.5, -0.5]], "recession": [0, 1], "axis_flags": [true, true]})"));
    Point<double> z(2);
    z << 0.1, 0.1;
    CHECK(contains(d, z));
    z << 0.1, 0.0;
    CHECK(contains(d, z));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(io::domain_from_json(json::parse(R"({"n": 1})")), DomainError);
    CHECK_THROWS_AS(io::domain_from_json(json::parse(R"({"n": 4, "bounds": [{"alpha": [1,0,0,0], "lt": 1}]})")), DomainError);
    CHECK_THROWS_AS(io::domain_from_json(json::parse(R"({"n": 1, "bounds": [{"alpha": [1, 0], "lt": 1}]})")), DomainError);
    CHECK_THROWS_AS(io::domain_from_json(json::parse(R"({"n": 1, "bounds": [{"alpha": [1], "lt": -1}]})")), DomainError);
    CHECK_THROWS_AS(io::domain_from_json(json::parse(R"({"n": 1, "bounds": [{"alpha": [1], "lt": 1, "gt": 0.5}]})")), DomainError);
    CHECK_THROWS_AS(io::domain_from_json(json::parse(R"({"n": 1, "bounds": [{"alpha": [1], "gt": 2}, {"alpha": [1], "lt": 1}]})")), DomainError);
  }
  SUBCASE("description re-reads to the same domain") {
    const auto d = corpus::hartogs_triangle();
    const auto again = io::domain_from_json(io::domain_to_json(d));
    for (const auto& z : sample_interior(d, 100)) CHECK(contains(again, z));
    const auto env = envelope(corpus::hartogs_figure());
    const auto env_again = io::domain_from_json(io::domain_to_json(env));
    for (const auto& z : sample_interior(env, 100)) CHECK(contains(env_again, z));
  }
}

TEST_CASE("series JSON round trip") {
  const ComplexFunction<double> f = [](const Point<double>& z) { return std::exp(z[0]) / (3.0 - z[0]); };
  const auto s = laurent_coefficients(f, corpus::unit_disc(), 12, 64);
  const auto text = io::series_to_json(s).dump();
  const auto back = io::series_from_json(json::parse(text));
  CHECK(back.coefficients.size() == s.coefficients.size());
  for (const auto& [a, c] : s.coefficients) CHECK(back.coefficient(a) == c);
  CHECK(back.extraction_radii == s.extraction_radii);
  CHECK(back.tail_bound == s.tail_bound);
  CHECK(io::series_to_json(back).dump() == text);
}

TEST_CASE("grid function formats") {
  const auto grid = TorusGrid<double>(2, 8, Eigen::Vector2d(0.3, 0.7));
  const auto g = sample<double>([](const Point<double>& z) { return std::exp(z[0]) / (1.0 - z[1]) + std::conj(z[0]); }, grid);
  std::stringstream csv;
  io::write_grid_csv(csv, g);
  const auto from_csv = io::read_grid_csv(csv);
  CHECK(from_csv.values == g.values);
  CHECK(from_csv.grid.radii == g.grid.radii);
  std::stringstream bin;
  io::write_grid_binary(bin, g);
  CHECK(bin.str().size() == 4 + 4 + 4 + 8 + 2 * 8 + 64 * 16);
  const auto from_bin = io::read_grid_binary(bin);
  CHECK(from_bin.values == g.values);
  std::stringstream bad("RLGX");
  CHECK_THROWS_AS(io::read_grid_binary(bad), Error);
}

TEST_CASE("number formatting") {
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(io::number(std::numeric_limits<double>::infinity()) == "inf");
  std::stringstream k;
  io::write_fejer_kernel_csv(k, 4, 3);
  CHECK(k.str().find("theta,kernel\n") == 0);
}
