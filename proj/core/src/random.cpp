#include "c4free/random.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace c4free {

Seed derive_seed(Seed base, std::uint64_t index) noexcept {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return Seed{mix(mix(base.value) ^ (index * 0xd1b54a32d192ed03ULL + 1))};
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // rejection sampling on the top of the range keeps the draw unbiased
  const auto limit = std::numeric_limits<std::uint64_t>::max() -
                     std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = 0;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::vector<std::uint32_t> Rng::subset(std::uint32_t universe, std::uint32_t count) {
  count = std::min(count, universe);
  // partial Fisher-Yates over an explicit pool; universes here are small
  std::vector<std::uint32_t> pool(universe);
  std::iota(pool.begin(), pool.end(), 0u);
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::uint32_t>(below(universe - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace c4free
