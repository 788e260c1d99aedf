#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace cdu {

// Runs fn(i) for i in [0, count). Each index writes only its own slot in
// caller-owned storage, so the result is identical for any thread count.
template <typename Fn>
void parallel_for(size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  unsigned nt = unsigned(std::min<size_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&] {
      try {
        for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          if (failed.load(std::memory_order_relaxed)) return;
          fn(i);
        }
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace cdu
