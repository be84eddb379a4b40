#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace oatk {

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Work items pull
/// from a shared counter, so uneven item costs balance out; callers keep
/// determinism by writing to per-index slots.
template <typename F>
void parallel_for(std::size_t n, int workers, F&& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int count = std::min<int>(workers, static_cast<int>(n));
  pool.reserve(count);
  for (int w = 0; w < count; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace oatk
