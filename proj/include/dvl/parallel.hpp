#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace dvl::par {

inline int hardware_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : int(n);
}

// Runs f(begin, end, chunk_index) over a fixed chunk grid. The grid depends
// only on (n, chunk), never on the worker count, so results are identical
// for any `threads` as long as chunks write disjoint state.
template <class F>
void for_chunks(std::size_t n, std::size_t chunk, int threads, F&& f) {
  if (n == 0) return;
  if (chunk == 0) chunk = 1;
  const std::size_t nchunks = (n + chunk - 1) / chunk;
  if (threads <= 1 || nchunks == 1) {
    for (std::size_t i = 0; i < nchunks; ++i)
      f(i * chunk, std::min(n, (i + 1) * chunk), i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= nchunks) return;
      f(i * chunk, std::min(n, (i + 1) * chunk), i);
    }
  };
  const int nw = int(std::min<std::size_t>(std::size_t(threads), nchunks));
  std::vector<std::thread> pool;
  pool.reserve(nw - 1);
  for (int t = 0; t + 1 < nw; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace dvl::par
