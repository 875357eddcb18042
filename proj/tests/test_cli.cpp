#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rlab/cli.hpp"
#include "rlab/parallel.hpp"

#include <sstream>

using namespace rlab;
using nlohmann::json;

#ifndef RLAB_FIXTURES
#define RLAB_FIXTURES "fixtures"
#endif

namespace {

struct Outcome {
  int code = 0;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "rlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(RLAB_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("extend reaches the bidisc from the Hartogs figure") {
  const auto r = invoke({"extend", "--domain", fixture("hartogs_figure.json"), "--fn", "1/(2-z1-z2)", "--point", "0.6,0.3",
                         "--no-timestamp"});
  REQUIRE(r.code == cli::kExitSuccess);
  const auto doc = r.report();
  CHECK_FALSE(doc["results"]["inside_domain"].get<bool>());
  CHECK(doc["results"]["inside_envelope"].get<bool>());
  CHECK(std::abs(doc["results"]["value"]["re"].get<double>() - 1.0 / 1.1) < 1e-6);
  CHECK_FALSE(doc.contains("wall_clock_seconds"));
}

TEST_CASE("fejer at order zero echoes the zeroth partial sum") {
  const auto r = invoke({"fejer", "--fn", "1/(2-z)+conj(z)", "--order", "0", "--no-timestamp"});
  REQUIRE(r.code == cli::kExitSuccess);
  CHECK(r.report()["certificates"]["c0_minus_s0"]["value"].get<double>() == 0.0);
}

TEST_CASE("exit codes") {
  CHECK(invoke({"morera-scan", "--fn", "exp(z)"}).code == cli::kExitSuccess);
  const auto bad = invoke({"morera-scan", "--fn", "conj(z)"});
  CHECK(bad.code == cli::kExitFailure);
  CHECK(bad.report()["verdict"] == "failure");
  CHECK(invoke({"laurent", "--domain", fixture("annulus.json"), "--fn", "conj(z)", "--alpha-box", "8"}).code ==
        cli::kExitFailure);
  CHECK(invoke({"nonsense"}).code == cli::kExitUsage);
  CHECK(invoke({"laurent", "--fn", "1/(1-z)"}).code == cli::kExitUsage);
  CHECK(invoke({"laurent", "--domain", fixture("unit_disc.json"), "--fn", "1/(1-z3)"}).code == cli::kExitUsage);
  CHECK(invoke({"fejer", "--fn", "z", "--grid-m", "100"}).code == cli::kExitUsage);
  CHECK(invoke({"fejer", "--fn", "z", "--tol", "-1"}).code == cli::kExitUsage);
  CHECK(invoke({"morera-scan", "--fn", "z", "--region", "1,0,0,1"}).code == cli::kExitUsage);
  CHECK(invoke({"goursat-trace", "--fn", "z", "--triangle", "0,1,2"}).code == cli::kExitUsage);
  CHECK(invoke({"--help"}).code == cli::kExitSuccess);
  // Outside the envelope is a mathematical failure, not a usage error.
  CHECK(invoke({"extend", "--domain", fixture("unit_disc.json"), "--fn", "z", "--point", "1.5"}).code == cli::kExitFailure);
}

TEST_CASE("echoed inputs re-parse to an equal config") {
  const std::vector<std::vector<std::string>> runs{
      {"hull", "--domain", fixture("l_shape.json")},
      {"envelope", "--domain", fixture("hartogs_figure.json"), "--point", "0.6,0.3"},
      {"laurent", "--domain", fixture("annulus.json"), "--fn", "1/z+z^2", "--alpha-box", "8", "--grid-m", "32", "--tol", "1e-7"},
      {"extend", "--domain", fixture("unit_bidisc.json"), "--fn", "exp(z1*z2)", "--point", "0.5,0.1*i", "--radii", "0.5,0.5"},
      {"fejer", "--fn", "abs(z1)*re(z2)", "--radii", "0.9,0.8", "--grid-m", "16", "--order", "3"},
      {"missing", "--domain", fixture("hartogs_triangle.json"), "--p", "1.5", "--w", "1,0", "--alpha-box", "3"},
      {"morera-scan", "--fn", "z^2", "--region", "0,1,0,0.5", "--budget", "16", "--tol", "1e-6"},
      {"pompeiu", "--fn", "z*conj(z)", "--point", "0.25-0.5*i"},
      {"goursat-trace", "--fn", "conj(z)", "--triangle", "0,1,i", "--depth", "4"},
  };
  for (auto args : runs) {
    CAPTURE(args[0]);
    args.push_back("--no-timestamp");
    const auto r = invoke(args);
    REQUIRE(r.code != cli::kExitUsage);
    const auto doc = r.report();
    const auto config = cli::ExperimentConfig::from_json(doc["inputs"]);
    CHECK(config.to_json() == doc["inputs"]);
    CHECK(cli::ExperimentConfig::from_json(json::parse(config.to_json().dump())) == config);
    CHECK_NOTHROW(config.validate());
    // Running the echoed config reproduces the results.
    CHECK(cli::report_json(config, cli::run(config), std::nullopt) == doc);
  }
}

TEST_CASE("reports do not depend on the thread count") {
  const std::vector<std::string> args{"laurent", "--domain", fixture("hartogs_figure.json"), "--fn", "1/(2-z1-z2)", "--no-timestamp"};
  auto a = args, b = args;
  a.insert(a.end(), {"--threads", "1"});
  b.insert(b.end(), {"--threads", "7"});
  CHECK(invoke(a).out == invoke(b).out);
  set_thread_count(1);
}

TEST_CASE("timestamp is present unless suppressed") {
  const auto r = invoke({"morera-scan", "--fn", "z"});
  CHECK(r.report().contains("wall_clock_seconds"));
  CHECK(r.report()["version"].get<std::string>() == cli::version());
}
