#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ndist {

inline unsigned default_workers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(begin, end, worker) over contiguous chunks of [0, count).
/// Chunks are assigned by worker id, so callers that reduce per-chunk
/// results in chunk order get the same answer for any worker count.
/// The exception thrown for the lowest chunk is rethrown.
template <class Body>
void parallel_chunks(std::size_t count, unsigned workers, Body&& body) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2 * workers) {
    if (count > 0) body(std::size_t{0}, count, 0u);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end, w] {
      try {
        body(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace ndist
