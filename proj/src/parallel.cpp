#include "cofrag/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cofrag {

int worker_count() {
  static const int count = [] {
    if (const char* env = std::getenv("COFRAG_THREADS")) {
      const long parsed = std::strtol(env, nullptr, 10);
      if (parsed > 0) return static_cast<int>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }();
  return count;
}

void parallel_for(int begin, int end, const std::function<void(int)>& body) {
  const int n = end - begin;
  if (n <= 0) return;
  const int workers = std::min(worker_count(), n);
  if (workers <= 1 || n < 4) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  const int grain = std::max(1, n / (workers * 8));
  std::atomic<int> next{begin};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    try {
      for (;;) {
        const int s = next.fetch_add(grain, std::memory_order_relaxed);
        if (s >= end) break;
        const int t = std::min(end, s + grain);
        for (int i = s; i < t; ++i) body(i);
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(end, std::memory_order_relaxed);  // drain remaining work
    }
  };
  {
    std::vector<std::jthread> helpers;
    helpers.reserve(static_cast<std::size_t>(workers - 1));
    for (int w = 1; w < workers; ++w) helpers.emplace_back(work);
    work();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace cofrag
