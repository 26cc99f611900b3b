#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <type_traits>
#include <vector>

namespace schur2 {

/// requested > 0 wins; otherwise SCHUR2_WORKERS, otherwise the hardware
/// concurrency (at least 1).
int resolve_workers(int requested);

/// Random stream for work item `stream` under `seed`. Streams are keyed by the
/// work item, never by the thread that happens to run it.
inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x5c4u};
  return std::mt19937_64(seq);
}

/// Evaluates f(0), ..., f(n-1) on up to `workers` threads and returns the
/// results in index order. The first exception thrown by any item is
/// rethrown after all threads have joined.
template <typename F>
auto parallel_map(std::size_t n, int workers, F&& f) {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out(n);
  const auto threads = static_cast<std::size_t>(std::max(1, workers));
  if (threads == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    const std::size_t count = std::min(threads, n);
    pool.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            out[i] = f(i);
          } catch (...) {
            const std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace schur2
