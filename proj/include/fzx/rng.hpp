#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace fzx {

// mt19937_64 output is fixed by the standard; everything drawn from it goes
// through the helpers below so sketches are reproducible across toolchains.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound). bound must be nonzero.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  std::uint64_t mask = bound - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  for (;;) {
    const std::uint64_t v = rng() & mask;
    if (v < bound) return v;
  }
}

/// Fisher-Yates, drawing with uniform_below.
template <class T>
void shuffle(Rng& rng, std::span<T> items) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

Rng seeded_from_os();

}  // namespace fzx
