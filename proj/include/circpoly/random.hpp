#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "circpoly/moebius.hpp"

namespace circpoly {

inline constexpr std::uint64_t kDefaultSeed = 20170605;

// Seed for trial `trial` of the suite named `suite`; independent of the
// order in which trials run.
std::uint64_t trial_seed(std::uint64_t seed, std::string_view suite, std::uint64_t trial);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return integer(0, 1) == 1; }

  Vec3 unit_vector();
  // Cap with radius in [min_radius, pi - min_radius].
  SphericalCap cap(double min_radius = 0.2);
  OrientedCircle circle(double min_radius = 0.2) { return OrientedCircle::from_cap(cap(min_radius)); }
  // Rotation, boost of rapidity at most max_rapidity, rotation.
  MoebiusMap moebius(double max_rapidity = 1.0);
  MoebiusMap rotation();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace circpoly
