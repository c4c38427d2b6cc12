#pragma once

#include <cstdint>
#include <random>

namespace mmspectra {

// std::mt19937_64 output is fixed by the standard, unlike the standard
// distributions, so index draws are done by hand to keep seeded runs
// identical across standard libraries.
using Rng = std::mt19937_64;

// Uniform integer in [0, n), n >= 1, by rejection sampling.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Independent stream for replicate `stream` of a seeded run.
inline Rng substream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

}  // namespace mmspectra
