#ifndef PHIMDP_RNG_HPP_
#define PHIMDP_RNG_HPP_

#include <cstdint>
#include <random>

namespace phimdp {

using Rng = std::mt19937_64;

/// splitmix64 step; used to derive independent stream seeds from one master
/// seed so that per-replica / per-run streams never alias.
inline uint64_t derive_seed(uint64_t base, uint64_t tag) {
  uint64_t z = base + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1). Avoids std::uniform_real_distribution so the
/// stream is identical across standard library implementations.
inline double rand_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform index in [0, n).
inline int rand_index(Rng& rng, int n) {
  return static_cast<int>(rng() % static_cast<uint64_t>(n));
}

}  // namespace phimdp

#endif  // PHIMDP_RNG_HPP_
