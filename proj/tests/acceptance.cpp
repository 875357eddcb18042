// One PASS/FAIL line per acceptance criterion. Criteria listed with
// --known-red are still run and printed; they only stop counting against the
// exit status, and an unexpected pass of one of them is reported as an error.

#include "rlab/cli.hpp"
#include "rlab/selftest.hpp"

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

namespace {

std::string selftest_report(const char* threads) {
  const char* args[] = {"rlab", "selftest", "--threads", threads, "--no-timestamp"};
  std::ostringstream out, err;
  rlab::cli::main(5, const_cast<char**>(args), out, err);
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known_red;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--known-red") == 0) known_red.insert(std::atoi(argv[++i]));

  int unexpected = 0;
  auto line = [&](int id, bool passed, const std::string& title, const std::string& detail) {
    std::cout << "criterion " << id << ": " << (passed ? "PASS" : "FAIL") << "  " << title;
    if (!detail.empty()) std::cout << "  " << detail;
    if (known_red.count(id)) std::cout << (passed ? "  (listed as known red but passed)" : "  (known red)");
    std::cout << '\n';
    if (passed == static_cast<bool>(known_red.count(id))) ++unexpected;
  };

  for (int id : rlab::selftest::ids()) {
    const auto c = rlab::selftest::run(id);
    line(id, c.passed, c.title, c.measured.dump());
  }

  const auto first = selftest_report("1"), second = selftest_report("8");
  const bool same = !first.empty() && first == second;
  line(10, same, "Selftest reports byte-identical under 1 and 8 threads",
       "{\"bytes\":" + std::to_string(first.size()) + "}");

  std::cout << (unexpected == 0 ? "acceptance: as expected" : "acceptance: unexpected results") << '\n';
  return unexpected == 0 ? 0 : 1;
}
