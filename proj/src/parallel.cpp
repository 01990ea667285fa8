#include "bilmax/parallel.hpp"

namespace bilmax {

namespace {
std::atomic<int> g_threads{0};
}

void set_thread_count(int threads) { g_threads.store(threads < 0 ? 0 : threads); }

int thread_count() {
  const int requested = g_threads.load();
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace bilmax
