#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace vandermetric {

/// SplitMix64 finalizer of (master, index): per-trial seeds independent of
/// execution order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// mt19937_64 with distribution code that does not depend on the standard
/// library's (implementation-defined) distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// exp(uniform(log lo, log hi)).
  double log_uniform(double lo, double hi);
  /// Integer in [lo, hi].
  long long uniform_int(long long lo, long long hi);

 private:
  std::mt19937_64 engine_;
};

/// Runs fn(index) for index in [0, count) and returns the results in index
/// order. Work is split into contiguous blocks over `workers` threads.
template <class Fn>
auto run_trials(std::size_t count, unsigned workers, Fn fn) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> results(count);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::vector<std::thread> pool;
  const std::size_t block = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(count, begin + block);
    pool.emplace_back([&, begin, end] {
      for (std::size_t i = begin; i < end; ++i) results[i] = fn(i);
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

unsigned default_workers();

}  // namespace vandermetric
