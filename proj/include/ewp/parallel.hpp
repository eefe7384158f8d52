#ifndef EWP_PARALLEL_HPP
#define EWP_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ewp {

// Runs fn(replicate_index) for indices [0, reps) on `workers` threads and
// collects the results indexed by replicate. Replicate r must derive all its
// randomness from stream_index = stream_base + r, so the output vector is
// identical for any worker count.
template <typename T>
std::vector<T> run_replicates(std::int64_t reps, int workers,
                              const std::function<T(std::int64_t)>& fn) {
  std::vector<T> results(reps);
  if (workers <= 1) {
    for (std::int64_t i = 0; i < reps; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const int count = std::min<std::int64_t>(workers, reps);
  pool.reserve(count);
  for (int w = 0; w < count; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= reps) return;
        try {
          results[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace ewp

#endif
