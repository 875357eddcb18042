#include "rlab/parallel.hpp"
#include "rlab/types.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace rlab {

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int threads) { g_threads = std::max(1, threads); }
int thread_count() { return g_threads; }

double halton(std::uint64_t index, unsigned base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

std::vector<MultiIndex> index_box(std::size_t n, int bound) {
  if (bound < 0) throw PreconditionError("index_box: negative bound");
  std::vector<MultiIndex> out;
  std::vector<int> e(n, -bound);
  const int width = 2 * bound + 1;
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= static_cast<std::size_t>(width);
  out.reserve(total);
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t rem = t;
    for (std::size_t j = n; j-- > 0;) {
      e[j] = static_cast<int>(rem % width) - bound;
      rem /= width;
    }
    out.emplace_back(e);
  }
  std::sort(out.begin(), out.end(), ShellOrder{});
  return out;
}

std::string to_string(const MultiIndex& alpha) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < alpha.size(); ++j) os << (j ? "," : "") << alpha[j];
  os << ')';
  return os.str();
}

}  // namespace rlab
