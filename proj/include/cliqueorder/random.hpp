#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace cliqueorder {

// std::mt19937_64 is fully specified by the standard; the distributions are
// not, so the helpers below derive values from raw 64-bit draws to keep
// generated instances identical across standard libraries.
using Rng = std::mt19937_64;

// Uniform on [0, 1).
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Uniform on the open interval (0, 1).
inline double uniform_open01(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform integer in [0, bound), rejection sampled.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

template <class T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

template <class Container>
void shuffle(Container& items, Rng& rng) {
  shuffle(std::span<typename Container::value_type>(items), rng);
}

// SplitMix64 step, used to derive independent seeds for sub-streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace cliqueorder
