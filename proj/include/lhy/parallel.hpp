#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace lhy::par {

// Thread cap: BOSE_LHY_THREADS if set, else hardware concurrency (max 8).
inline int max_threads() {
  if (const char* env = std::getenv("BOSE_LHY_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(hw == 0 ? 1 : (hw > 8 ? 8 : hw));
}

// Runs body(i) for i in [0, n).  Results must be written to per-index slots;
// the iteration order is unspecified but the output layout is deterministic.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  int nthreads = max_threads();
  if (nthreads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace lhy::par
