#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace fairsim {

/// Seeded random stream. Distributions are implemented in-house (Box-Muller
/// normals, Fisher-Yates shuffles, rejection-sampled bounded integers) on top
/// of mt19937_64, so two builds with the same seed produce the same stream
/// regardless of standard-library internals.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of mantissa.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); bound must be > 0. Rejection sampling,
  /// so the result is unbiased.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Box-Muller transform; consumes exactly two draws per call.
  double normal(double mean, double stddev);

  bool bernoulli(double p) { return uniform01() < p; }

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  /// m distinct indices drawn uniformly from [0, n), in draw order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t m);

private:
  std::mt19937_64 engine_;
};

/// Stable derivation of per-stream sub-seeds (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace fairsim
