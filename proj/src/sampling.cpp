#include "conicstab/sampling.hpp"

#include <atomic>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace conicstab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 draw_stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

std::optional<std::uint64_t> first_failing_draw_serial(std::uint64_t count, const DrawPredicate& fails) {
  for (std::uint64_t i = 0; i < count; ++i)
    if (fails(i)) return i;
  return std::nullopt;
}

std::optional<std::uint64_t> first_failing_draw_parallel(std::uint64_t count, const DrawPredicate& fails,
                                                         int threads) {
#ifdef _OPENMP
  std::atomic<std::uint64_t> best{count};
  std::exception_ptr error;
  std::mutex error_mutex;
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16) num_threads(nthreads)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    if (idx >= best.load(std::memory_order_relaxed)) continue;
    try {
      if (fails(idx)) {
        std::uint64_t cur = best.load(std::memory_order_relaxed);
        while (idx < cur && !best.compare_exchange_weak(cur, idx, std::memory_order_relaxed)) {
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      best.store(0, std::memory_order_relaxed);
    }
  }
  if (error) std::rethrow_exception(error);
  const std::uint64_t found = best.load();
  if (found == count) return std::nullopt;
  return found;
#else
  (void)threads;
  return first_failing_draw_serial(count, fails);
#endif
}

std::optional<std::uint64_t> first_failing_draw(std::uint64_t count, const DrawPredicate& fails, int threads) {
  if (threads == 1) return first_failing_draw_serial(count, fails);
  return first_failing_draw_parallel(count, fails, threads);
}

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace conicstab
