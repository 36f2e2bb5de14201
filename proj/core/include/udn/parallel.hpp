#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace udn {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Splits [0, total) into contiguous chunks, runs `fn(begin, end)` on each
/// and returns the per-chunk results in chunk order. Combining commutative
/// per-chunk results (counts, per-slot writes) therefore cannot depend on
/// the number of workers.
template <typename R, typename Fn>
std::vector<R> parallel_chunks(std::uint64_t total, int threads, Fn&& fn) {
  threads = resolve_threads(threads);
  const std::uint64_t n_chunks =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), total == 0 ? 1 : total);
  std::vector<R> results(n_chunks);
  if (n_chunks <= 1) {
    results[0] = fn(std::uint64_t{0}, total);
    return results;
  }
  std::vector<std::thread> workers;
  workers.reserve(n_chunks);
  const std::uint64_t per = total / n_chunks;
  const std::uint64_t extra = total % n_chunks;
  std::uint64_t begin = 0;
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    const std::uint64_t end = begin + per + (c < extra ? 1 : 0);
    workers.emplace_back([&results, &fn, c, begin, end] { results[c] = fn(begin, end); });
    begin = end;
  }
  for (auto& w : workers) w.join();
  return results;
}

/// Counts indices in [0, total) for which `pred(i)` holds. Thread-count
/// invariant: integer partial sums combine exactly.
template <typename Pred>
std::uint64_t parallel_count(std::uint64_t total, int threads, Pred&& pred) {
  auto partials = parallel_chunks<std::uint64_t>(
      total, threads, [&pred](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t count = 0;
        for (std::uint64_t i = begin; i < end; ++i)
          if (pred(i)) ++count;
        return count;
      });
  std::uint64_t total_count = 0;
  for (auto c : partials) total_count += c;
  return total_count;
}

}  // namespace udn
