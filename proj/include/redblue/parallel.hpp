#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

// Deterministic work partitioning. Chunk boundaries depend only on the total
// item count, never on the worker count, and workers pull chunks from a
// shared counter. Callers must combine per-chunk results with
// order-independent reductions (integer sums, min-index, exact max) so the
// outcome is identical for any number of workers.

namespace redblue {

// REDBLUE_THREADS if set, else hardware concurrency, else 1.
int default_worker_count();

inline int resolve_workers(int requested) {
  return requested > 0 ? requested : default_worker_count();
}

// fn(chunk_begin, chunk_end, worker_id) over [0, total) in fixed chunks.
inline void parallel_chunks(std::uint64_t total, int workers, std::uint64_t chunk_size,
                            const std::function<void(std::uint64_t, std::uint64_t, int)>& fn) {
  if (total == 0) return;
  if (chunk_size == 0) chunk_size = 1;
  const std::uint64_t chunks = (total + chunk_size - 1) / chunk_size;
  workers = resolve_workers(workers);
  if (workers < 1) workers = 1;
  if (static_cast<std::uint64_t>(workers) > chunks) workers = static_cast<int>(chunks);

  if (workers == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) {
      const std::uint64_t b = c * chunk_size;
      fn(b, std::min(total, b + chunk_size), 0);
    }
    return;
  }

  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (;;) {
        const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
        if (c >= chunks) return;
        const std::uint64_t b = c * chunk_size;
        fn(b, std::min(total, b + chunk_size), w);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace redblue
