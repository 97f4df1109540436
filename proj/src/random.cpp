#include "circpoly/random.hpp"

#include <cmath>
#include <numbers>

namespace circpoly {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::string_view suite, std::uint64_t trial) {
  // FNV-1a over the suite name keeps suites independent of each other.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : suite) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return splitmix(splitmix(seed ^ h) + trial);
}

Vec3 Rng::unit_vector() {
  Vec3 v;
  do {
    v = Vec3(normal(), normal(), normal());
  } while (v.norm() < 1e-6);
  return v.normalized();
}

SphericalCap Rng::cap(double min_radius) {
  Vec3 p = unit_vector();
  return SphericalCap{p, uniform(min_radius, std::numbers::pi - min_radius)};
}

MoebiusMap Rng::rotation() {
  Eigen::Vector4d q(normal(), normal(), normal(), normal());
  q.normalize();
  Complex alpha(q[0], q[1]);
  Complex beta(q[2], q[3]);
  return MoebiusMap::from_coefficients(alpha, -std::conj(beta), beta, std::conj(alpha));
}

MoebiusMap Rng::moebius(double max_rapidity) {
  double s = uniform(0.0, max_rapidity);
  MoebiusMap boost = MoebiusMap::from_coefficients(std::exp(s / 2.0), 0.0, 0.0, std::exp(-s / 2.0));
  return rotation().compose(boost).compose(rotation());
}

}  // namespace circpoly
