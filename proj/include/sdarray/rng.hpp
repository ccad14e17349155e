#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace sdarray {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent generator for (seed, trial, stream). Streams depend only on
/// the key, so trials can run in any order or in parallel.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream) {
  std::uint64_t state = seed;
  std::uint64_t a = splitmix64(state);
  state = a ^ (trial * 0xd1342543de82ef95ULL);
  std::uint64_t b = splitmix64(state);
  state = b ^ (stream * 0xa0761d6478bd642fULL + 0x8bb84b93962eacc9ULL);
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state))};
  return std::mt19937_64(seq);
}

/// Uniform draw in [lo, hi]; returns lo exactly when the bounds coincide.
inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  if (lo == hi) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

/// Circularly-symmetric complex Gaussian with E|x|² = variance.
inline std::complex<double> complex_normal(std::mt19937_64& gen, double variance) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5 * variance));
  const double re = nd(gen);
  const double im = nd(gen);
  return {re, im};
}

}  // namespace sdarray
