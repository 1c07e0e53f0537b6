#pragma once
// Fixed-partition parallel map. Callers pick the partition independently of
// the thread count and reduce the per-task results in index order, so
// results do not depend on how many workers ran.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bsz {

// BSZ_THREADS if set (>= 1), else the hardware concurrency.
std::size_t worker_count();

namespace detail {
// Set on pool threads; nested parallel_for calls then run inline.
inline thread_local bool in_pool = false;
}  // namespace detail

template <class Fn>
void parallel_for(std::size_t tasks, Fn&& fn) {
  const std::size_t workers = detail::in_pool ? 1 : std::min(worker_count(), tasks);
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    const bool outer = detail::in_pool;
    detail::in_pool = true;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(tasks);
      }
    }
    detail::in_pool = outer;
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace bsz
