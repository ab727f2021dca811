#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace lbmp::util {

// Uniform double in [0,1) built from the top 53 bits of the generator
// output, identical on every platform.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  return n == 0 ? 0 : rng() % n;
}

// Runs fn(i) for i in [0,count) over a small thread pool. Work items must
// write to disjoint slots; results do not depend on scheduling.
template <typename F>
void parallel_for(std::int64_t count, F&& fn) {
  if (count <= 0) return;
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 4;
  if (static_cast<std::int64_t>(workers) > count) workers = static_cast<unsigned>(count);
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::int64_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace lbmp::util
