#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "c4free/parallel.hpp"
#include "c4free/rational.hpp"

namespace c4free {

struct RetryOptions {
  std::size_t retries = 100;
  unsigned threads = 1;
};

/// One seeded attempt: a candidate, whether it passed verification, and a score
/// used to pick the best attempt when none passes.
template <typename T>
struct Trial {
  T value;
  bool accepted = false;
  Rational score{0};
};

template <typename T>
struct RetryOutcome {
  std::optional<T> accepted;
  std::optional<Trial<T>> best;  // highest score, earliest index on ties
  std::size_t attempts = 0;
};

/// Runs attempt(i) for i = 0, 1, ... in blocks of `threads` and returns the
/// lowest-index accepted trial, so the result does not depend on the thread count.
/// attempt returns std::optional<Trial<T>>; nullopt means "nothing to show".
template <typename T, typename Attempt>
RetryOutcome<T> retry_until_verified(const RetryOptions& options, Attempt&& attempt) {
  RetryOutcome<T> out;
  const std::size_t block = std::max(1u, options.threads);
  for (std::size_t start = 0; start < options.retries; start += block) {
    const auto count = std::min(block, options.retries - start);
    std::vector<std::optional<Trial<T>>> slots(count);
    parallel_for(count, options.threads, [&](std::size_t i) { slots[i] = attempt(start + i); });
    for (std::size_t i = 0; i < count; ++i) {
      auto& slot = slots[i];
      if (!slot) continue;
      if (slot->accepted) {
        out.accepted = std::move(slot->value);
        out.attempts = start + i + 1;
        return out;
      }
      if (!out.best || slot->score > out.best->score) out.best = std::move(*slot);
    }
  }
  out.attempts = options.retries;
  return out;
}

}  // namespace c4free
