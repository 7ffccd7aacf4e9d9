#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace efc {

/// Knobs shared by the exhaustive subset searches. `max_free_generators`
/// bounds the lattice: a search over 2^k subsets is refused when k exceeds it.
struct ExecPolicy {
  unsigned threads = 1;
  unsigned max_free_generators = 16;

  /// EFC_THREADS and EFC_BUDGET override the defaults.
  static ExecPolicy from_env() {
    ExecPolicy p;
    if (const char* t = std::getenv("EFC_THREADS")) p.threads = static_cast<unsigned>(std::stoul(t));
    if (const char* b = std::getenv("EFC_BUDGET"))
      p.max_free_generators = static_cast<unsigned>(std::stoul(b));
    if (p.threads == 0) p.threads = std::max(1u, std::thread::hardware_concurrency());
    return p;
  }
};

/// Runs body(i) for i in [0, n). Each index is written by exactly one worker,
/// so results stored by index do not depend on the thread count. The first
/// exception thrown is rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace efc
