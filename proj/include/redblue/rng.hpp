#pragma once

#include <cstdint>
#include <cmath>

// Counter-based random numbers: every variate is a pure function of
// (seed, stream, counter, slot), so results do not depend on evaluation
// order or on how work is partitioned across threads.

namespace redblue::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t key(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t counter, std::uint64_t slot = 0) {
  std::uint64_t h = mix64(seed + kGolden);
  h = mix64(h ^ (stream + kGolden));
  h = mix64(h ^ (counter + kGolden));
  return mix64(h ^ (slot + kGolden));
}

// uniform in [0, 1), 53-bit resolution
constexpr double u01(std::uint64_t seed, std::uint64_t stream,
                     std::uint64_t counter, std::uint64_t slot = 0) {
  return static_cast<double>(key(seed, stream, counter, slot) >> 11) * 0x1.0p-53;
}

// uniform in (0, 1); safe as a log() argument
constexpr double u01_open(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t counter, std::uint64_t slot = 0) {
  return (static_cast<double>(key(seed, stream, counter, slot) >> 11) + 0.5) * 0x1.0p-53;
}

inline double gaussian(std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t counter, std::uint64_t slot) {
  // Box-Muller; slots are consumed in pairs (slot, slot+1)
  const double u1 = u01_open(seed, stream, counter, 2 * slot);
  const double u2 = u01(seed, stream, counter, 2 * slot + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

// Stream ids, one per sampling purpose. Keeping them in one place avoids
// accidental reuse of the same (seed, stream) pair by two different loops.
namespace streams {
inline constexpr std::uint64_t kDarts = 0xd417;
inline constexpr std::uint64_t kGridJitter = 0x9717;
inline constexpr std::uint64_t kSampleQ = 0x5a3b;
inline constexpr std::uint64_t kResample = 0x4e5a;
inline constexpr std::uint64_t kRedDensity = 0x4ed0;
inline constexpr std::uint64_t kRedSearch = 0x4e5e;
inline constexpr std::uint64_t kBlueLine = 0xb10e;
inline constexpr std::uint64_t kPlacement = 0x97ac;
}  // namespace streams

}  // namespace redblue::rng
