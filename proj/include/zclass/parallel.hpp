#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace zclass {

/// Worker count used when a caller passes jobs <= 0.
inline int default_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

/// Smallest i in [0, count) with pred(i), or nullopt. The range is split into
/// contiguous chunks, one per worker; workers stop once they pass the best hit
/// found so far, so the answer never depends on scheduling.
template <class Pred>
std::optional<std::uint64_t> parallel_find_first(std::uint64_t count, int jobs, Pred pred) {
  if (jobs <= 0) jobs = default_jobs();
  const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(std::uint64_t(jobs), count));
  constexpr std::uint64_t kNone = ~std::uint64_t(0);
  if (workers == 1) {
    for (std::uint64_t i = 0; i < count; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }

  std::atomic<std::uint64_t> best{kNone};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  const std::uint64_t chunk = (count + workers - 1) / workers;
  for (std::uint64_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        const std::uint64_t end = std::min(count, (w + 1) * chunk);
        for (std::uint64_t i = w * chunk; i < end && i < best.load(std::memory_order_relaxed); ++i) {
          if (pred(i)) {
            std::uint64_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            return;
          }
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  if (best.load() == kNone) return std::nullopt;
  return best.load();
}

/// Runs body(i) for i in [0, count) across workers. Results must be written
/// to per-index slots by the caller so the reduction stays deterministic.
template <class Body>
void parallel_for(std::uint64_t count, int jobs, Body body) {
  if (jobs <= 0) jobs = default_jobs();
  const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(std::uint64_t(jobs), count));
  if (workers == 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (std::uint64_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::uint64_t i = next++; i < count; i = next++) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace zclass
