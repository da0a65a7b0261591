#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace hullforge {

// Worker cap: HULLFORGE_THREADS, else hardware concurrency (at most 8).
inline int thread_cap() {
  if (const char* env = std::getenv("HULLFORGE_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return std::max(1, std::min<int>(8, (int)hw));
}

// Chunked parallel reduction. Each chunk produces a value; chunks are merged
// in index order, so results do not depend on scheduling. merge must be
// associative over doubles only through min/max style operations.
template <class T>
T parallel_reduce(std::int64_t n, T init,
                  const std::function<T(std::int64_t, std::int64_t)>& chunk_fn,
                  const std::function<T(const T&, const T&)>& merge) {
  int workers = thread_cap();
  if (workers <= 1 || n < 4096) return merge(init, chunk_fn(0, n));
  std::int64_t chunks = std::min<std::int64_t>(workers * 4, n);
  std::vector<T> results(chunks, init);
  std::vector<std::thread> pool;
  std::int64_t per = (n + chunks - 1) / chunks;
  std::int64_t next = 0;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::int64_t c = w; c < chunks; c += workers) {
        std::int64_t lo = c * per, hi = std::min(n, lo + per);
        if (lo < hi) results[(size_t)c] = chunk_fn(lo, hi);
      }
    });
  }
  for (auto& t : pool) t.join();
  T acc = init;
  for (const auto& r : results) acc = merge(acc, r);
  return acc;
}

}  // namespace hullforge
