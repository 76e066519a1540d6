#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace c4free {

/// Seed for every randomized operation; identical seed and inputs give identical outputs.
struct Seed {
  std::uint64_t value = 0;

  friend bool operator==(Seed, Seed) = default;
};

/// Derives an independent sub-seed for item `index` of a seeded family (retry i, trial i, ...).
/// splitmix64 finalizer over (seed, index), so sub-streams never overlap in practice.
Seed derive_seed(Seed base, std::uint64_t index) noexcept;

/// Thin wrapper over mt19937_64 whose derived draws are fully specified here, so
/// results do not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed.value) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform01() < p;
  }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    shuffle(std::span<T>(items));
  }

  /// Uniformly random `count`-subset of {0..universe-1}, sorted ascending.
  std::vector<std::uint32_t> subset(std::uint32_t universe, std::uint32_t count);

 private:
  std::mt19937_64 engine_;
};

}  // namespace c4free
