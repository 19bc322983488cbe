#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace disorder {

// Static contiguous partition of [0, n) over `workers` threads. Each worker
// owns a disjoint index range, so results are deterministic for any worker
// count as long as per-index work writes only to its own slots.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t w = static_cast<std::size_t>(workers);
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    const std::size_t lo = n * t / w;
    const std::size_t hi = n * (t + 1) / w;
    if (lo == hi) continue;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Shard boundaries for replication loops: shard s covers [begin(s), end(s)).
inline std::size_t shard_begin(std::size_t n, int shards, int s) {
  return n * static_cast<std::size_t>(s) / static_cast<std::size_t>(shards);
}
inline std::size_t shard_end(std::size_t n, int shards, int s) {
  return n * static_cast<std::size_t>(s + 1) / static_cast<std::size_t>(shards);
}

}  // namespace disorder
