#pragma once

#include <cstdint>
#include <random>

namespace cda {

using Rng = std::mt19937_64;

/// SplitMix64 mixing step.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for the sub-stream (stream, index) of a master seed. Streams derived
/// this way are stable across runs and independent of evaluation order, so
/// benchmark tasks can run on any thread and still reproduce bit-identically.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t index = 0) {
  std::uint64_t h = splitmix64(master ^ 0x6a09e667f3bcc909ULL);
  h = splitmix64(h ^ splitmix64(stream));
  h = splitmix64(h ^ splitmix64(index));
  return h;
}

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

}  // namespace cda
