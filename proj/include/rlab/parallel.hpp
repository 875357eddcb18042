#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <algorithm>
#include <span>
#include <thread>
#include <vector>

namespace rlab {

/// Number of worker threads used by parallel loops (default 1).
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, count). Each index is processed exactly once and
/// independently, so results never depend on the thread count. An exception
/// from the lowest-numbered failing chunk is rethrown after all workers join.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_count()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t begin = count * w / workers;
      const std::size_t end = count * (w + 1) / workers;
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Fixed-tree pairwise summation.
template <typename T>
T pairwise_sum(std::span<const T> values) {
  if (values.empty()) return T(0);
  if (values.size() <= 8) {
    T s = values[0];
    for (std::size_t i = 1; i < values.size(); ++i) s += values[i];
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(std::span<const T>(values.data(), values.size()));
}

/// Radical-inverse (Halton) coordinate of index i in the given prime base.
double halton(std::uint64_t index, unsigned base);

/// Portable uniform double in [0,1) from a 64-bit word.
inline double unit_interval(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace rlab
