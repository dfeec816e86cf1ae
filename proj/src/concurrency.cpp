#include <kdvist/concurrency.hpp>

#include <algorithm>
#include <thread>
#include <vector>

namespace kdvist {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return std::max(1u, hc);
}

void parallel_for(Index n, int threads, const std::function<void(Index)>& fn) {
  int T = std::min<Index>(resolve_threads(threads), std::max<Index>(n, 1));
  if (T <= 1) {
    for (Index i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(T);
  for (int t = 0; t < T; ++t) {
    pool.emplace_back([&, t]() {
      for (Index i = t; i < n; i += T) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

} // namespace kdvist
