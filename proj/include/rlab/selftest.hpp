#pragma once

// Property checks over the reference corpus, shared by the CLI `selftest`
// command and the acceptance binary. Results carry no timing data, so a
// report depends only on the code and not on the thread count.

#include "json.hpp"

#include <string>
#include <vector>

namespace rlab::selftest {

struct Criterion {
  int id = 0;
  std::string title;
  bool passed = false;
  /// Measured quantities, each next to the tolerance it was judged against.
  nlohmann::json measured;
};

/// Ids of the in-process checks.
std::vector<int> ids();

Criterion run(int id);

std::vector<Criterion> run_all();

nlohmann::json to_json(const Criterion& c);

}  // namespace rlab::selftest
