#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

namespace xihom {

// XIHOM_THREADS: 0 or unset means auto, 1 forces serial execution.
inline unsigned thread_budget() {
  const char* env = std::getenv("XIHOM_THREADS");
  long n = env ? std::atol(env) : 0;
  if (n < 0) n = 0;
  if (n == 0) {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }
  return unsigned(n);
}

// Deterministic regardless of schedule: callers write results by index.
template <class F>
void parallel_for(size_t n, F&& fn) {
  unsigned workers = thread_budget();
  if (workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  if (workers > n) workers = unsigned(n);
  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= n) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace xihom
