#include "lapblend/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace lapblend {
namespace {

std::atomic<int> g_threads{0};

}  // namespace

void set_thread_count(int threads) { g_threads.store(std::max(threads, 0)); }

int thread_count() noexcept {
  const int requested = g_threads.load();
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for_rows(int rows, const std::function<void(int)>& body) {
  const int workers = std::min(thread_count(), rows);
  if (workers <= 1 || rows < 16) {
    for (int y = 0; y < rows; ++y) body(y);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int y = next.fetch_add(1); y < rows; y = next.fetch_add(1)) body(y);
  };
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  for (int i = 0; i < workers - 1; ++i) pool.emplace_back(worker);
  worker();
}

}  // namespace lapblend
