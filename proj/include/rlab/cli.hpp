#pragma once

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rlab::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

/// Everything that determines a run's results. Output plumbing (--out,
/// --csv-dir, --threads, --no-timestamp) is not part of it.
struct ExperimentConfig {
  std::string command;
  std::optional<nlohmann::json> domain_spec;
  std::optional<std::string> function_expr;
  std::size_t grid_m = 64;
  int alpha_box = 24;
  std::optional<double> tol;
  int order = 8;
  double p = 2.0;
  std::vector<double> weight;
  std::vector<std::string> point;
  std::vector<double> radii;
  std::vector<double> region{-1.0, 1.0, -1.0, 1.0};
  std::vector<std::string> triangle;
  int depth = 12;
  std::size_t budget = 256;

  bool operator==(const ExperimentConfig&) const = default;

  /// Throws rlab::Error (ParseError for expressions) when a knob is invalid.
  void validate() const;
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

const std::vector<std::string>& commands();

struct RunReport {
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json certificates = nlohmann::json::object();
  bool success = true;
  /// Bulk data: file name -> CSV text.
  std::vector<std::pair<std::string, std::string>> csv;
};

/// Dispatches to the library. Mathematical errors raised by the library are
/// reported as failures with an "error" entry.
RunReport run(const ExperimentConfig& config);

/// The full JSON document for a finished run.
nlohmann::json report_json(const ExperimentConfig& config, const RunReport& report,
                           std::optional<double> wall_clock_seconds);

std::string version();

/// Command-line entry point; returns the process exit code.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace rlab::cli
