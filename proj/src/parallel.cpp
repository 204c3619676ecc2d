#include "killform/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace killform {

namespace {

unsigned default_threads() {
  if (const char* env = std::getenv("KILLFORM_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::atomic<unsigned> g_threads{0};

}  // namespace

unsigned thread_count() {
  unsigned t = g_threads.load();
  if (t == 0) {
    t = default_threads();
    g_threads.store(t);
  }
  return t;
}

void set_thread_count(unsigned n) { g_threads.store(std::max(1u, n)); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, unsigned)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i, 0);
    return;
  }
  const std::size_t chunk = std::max<std::size_t>(1, n / (workers * 16));
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto run = [&](unsigned w) {
    try {
      for (;;) {
        std::size_t start = next.fetch_add(chunk);
        if (start >= n) return;
        std::size_t stop = std::min(n, start + chunk);
        for (std::size_t i = start; i < stop; ++i) body(i, w);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(n);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace killform
