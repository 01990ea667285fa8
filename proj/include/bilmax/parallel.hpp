#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bilmax {

/// Worker count used by parallel sweeps; 0 selects hardware concurrency.
void set_thread_count(int threads);
int thread_count();

// Runs fn(i) for i in [0, count). Work items must be independent; callers
// reduce results by index afterwards so the outcome never depends on
// scheduling.
namespace detail {
/// Set on pool workers so nested sweeps run inline.
inline thread_local bool inside_pool = false;
}  // namespace detail

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_count()), count);
  if (workers <= 1 || detail::inside_pool) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        detail::inside_pool = true;
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace bilmax
