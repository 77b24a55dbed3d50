#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace dpomdp {

using StateId = std::uint64_t;
using ActionId = std::size_t;
using ObsId = std::size_t;

using Rng = std::mt19937_64;

/// Derives an independent generator for stream `stream` of a master seed.
/// Streams are mixed with splitmix64 so neighbouring indices do not correlate.
Rng make_stream(std::uint64_t master_seed, std::uint64_t stream);

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

}  // namespace dpomdp
