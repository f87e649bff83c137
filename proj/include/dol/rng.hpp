#pragma once

#include <cstdint>
#include <random>

namespace dol {

using Rng = std::mt19937_64;

// Derives an independent stream seed from a master seed and a salt
// (splitmix64 finalizer). Used to give each agent its own generator so
// that adding agents never perturbs the draws of existing ones.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1) with 53-bit resolution. mt19937_64 output is
// fully specified by the standard, so draws are identical on every
// platform; std::uniform_real_distribution is not.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Uniform integer in [0, n), bias-free via rejection.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  std::uint64_t x = rng();
  std::uint64_t r = x % n;
  while (x - r > UINT64_MAX - (n - 1)) {
    x = rng();
    r = x % n;
  }
  return r;
}

}  // namespace dol
