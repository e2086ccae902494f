#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace arena {

// std::mt19937_64 output is fixed by the standard but the distributions are
// not, so draws go through these helpers to stay identical across libraries.
using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection; n must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace arena
