#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace degdyn::num {

// Runs fn(i) for i in [0, n). Tasks must be independent; callers that reduce
// write into preallocated slot i so the result is identical for any thread
// count. threads <= 1 runs inline.
template <class F>
void parallel_for(std::size_t n, int threads, F&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  int workers = std::min<int>(threads, (int)n);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve((std::size_t)workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  for (auto& t : pool) t.join();
}

}  // namespace degdyn::num
