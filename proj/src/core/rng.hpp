// Deterministic substream seeding for Monte-Carlo work.
//
// Every random draw in an experiment comes from a generator keyed by
// (master seed, role, trial index, component index).  Trials therefore see
// identical randomness no matter how they are scheduled across threads,
// which makes experiment outputs byte-stable under any parallelism degree.
#pragma once

#include <cstdint>
#include <random>

namespace ccdt::rng {

// splitmix64 finalizer; a well-mixed 64-bit permutation.
inline uint64_t mix(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline uint64_t derive(uint64_t key, uint64_t a) { return mix(key ^ mix(a)); }

inline uint64_t derive(uint64_t key, uint64_t a, uint64_t b) {
  return derive(derive(key, a), b);
}

inline uint64_t derive(uint64_t key, uint64_t a, uint64_t b, uint64_t c) {
  return derive(derive(key, a, b), c);
}

// Stream roles keep unrelated draws out of each other's substreams.
enum Role : uint64_t {
  kRoleFading = 1,
  kRoleNoise = 2,
  kRoleFreqOffset = 3,
  kRoleData = 4,
  kRoleTargets = 5,
  kRoleCalibration = 6,
  kRoleScan = 7,
};

inline std::mt19937_64 make(uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace ccdt::rng
