#pragma once

// Deterministic index sweeps. Workers own contiguous index ranges and the
// reported violation is always the smallest failing index, whatever the
// scheduling.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

namespace pqp {

/// Smallest index in [0, count) for which `fails(index, worker)` is true.
/// `fails` must be safe to call concurrently for distinct workers.
template <class Fn>
std::optional<std::uint64_t> first_failure(std::uint64_t count, unsigned workers, Fn&& fails) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 4096) {
    for (std::uint64_t k = 0; k < count; ++k)
      if (fails(k, 0u)) return k;
    return std::nullopt;
  }
  std::atomic<std::uint64_t> best{count};
  auto run = [&](unsigned w) {
    const std::uint64_t lo = count * w / workers;
    const std::uint64_t hi = count * (w + 1) / workers;
    for (std::uint64_t k = lo; k < hi; ++k) {
      if (k >= best.load(std::memory_order_relaxed)) return;
      if (fails(k, w)) {
        std::uint64_t cur = best.load();
        while (k < cur && !best.compare_exchange_weak(cur, k)) {
        }
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  for (auto& t : pool) t.join();
  if (best.load() == count) return std::nullopt;
  return best.load();
}

} // namespace pqp
