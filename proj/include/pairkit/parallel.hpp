#pragma once
// Indexed fan-out helper. Results land by index, so assembly order never
// depends on scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace pairkit {

// Runs fn(i) for i in [0, count) on up to max_workers threads. The first
// exception (by lowest index) is rethrown after all workers finish.
template <typename Fn>
void parallel_for_index(std::size_t count, int max_workers, Fn&& fn) {
  if (count == 0) return;
  const int workers = std::max(1, std::min<int>(max_workers, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::pair<std::size_t, std::exception_ptr>> errors(workers, {count, nullptr});
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          if (errors[w].second == nullptr || i < errors[w].first)
            errors[w] = {i, std::current_exception()};
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  std::size_t first = count;
  std::exception_ptr eptr;
  for (const auto& [idx, e] : errors) {
    if (e && idx < first) {
      first = idx;
      eptr = e;
    }
  }
  if (eptr) std::rethrow_exception(eptr);
}

}  // namespace pairkit
