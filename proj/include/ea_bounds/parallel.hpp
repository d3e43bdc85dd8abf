#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ea {

/// Number of worker threads to use when the caller passes 0.
inline unsigned default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

/// Evaluates `task(i)` for i in [0, count) on up to `threads` workers and
/// returns the results indexed by i. Callers fold the returned vector in
/// index order, so the reduction never depends on the thread count.
template <class Result, class Task>
std::vector<Result> indexed_map(std::size_t count, unsigned threads, Task&& task) {
  std::vector<Result> results(count);
  if (threads == 0) threads = default_threads();
  const auto workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = task(i);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        results[i] = task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return results;
}

/// Half-open index range of chunk `c` when [0, total) is split into `chunks` parts.
struct ChunkRange {
  std::size_t begin;
  std::size_t end;
};

inline ChunkRange chunk_range(std::size_t total, std::size_t chunks, std::size_t c) {
  return {total * c / chunks, total * (c + 1) / chunks};
}

}  // namespace ea
