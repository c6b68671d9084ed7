#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace darkchain {

/// SplitMix64 finalizer. Used to derive independent substream seeds from a
/// master seed and a counter tuple, so that sample k of an ensemble draws the
/// same numbers regardless of which worker evaluates it.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t substream_seed(std::uint64_t master,
                                       std::initializer_list<std::uint64_t> counters) noexcept {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t c : counters) h = splitmix64(h ^ splitmix64(c + 0x632BE59BD9B4E019ULL));
  return h;
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine{seed}; }

}  // namespace darkchain
