#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "blaschke/geometry.hpp"

namespace blaschke::detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for trial `i` of a campaign seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
  return splitmix64(splitmix64(seed) ^ (i * 0xd1b54a32d192ed03ULL));
}

// std distributions are implementation-defined; these mappings are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  /// Uniform on the unit sphere (Archimedes' projection).
  Vec3 sphere() {
    const double z = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, 2.0 * std::numbers::pi);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return Vec3(r * std::cos(phi), r * std::sin(phi), z);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace blaschke::detail
