#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tightham {

// Worker count: TIGHTHAM_THREADS if set and positive, else the hardware count.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("TIGHTHAM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Runs f(i) for i in [0, count) on a small pool. Tasks are handed out by an
// atomic counter; results must be written to per-index slots so the outcome
// does not depend on scheduling. The first exception is rethrown.
template <class F>
void parallel_for(std::size_t count, F&& f, std::size_t workers = 0) {
  if (workers == 0) workers = worker_count();
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex m;
  auto body = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (!err) err = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace tightham
