#include "circpoly/moebius.hpp"

#include <algorithm>
#include <cmath>

#include "circpoly/error.hpp"

namespace circpoly {

namespace {

struct Homog {
  Complex x;
  Complex y;
};

Homog homog(const ExtComplex& z) { return z.infinite ? Homog{1.0, 0.0} : Homog{z.z, 1.0}; }

Complex hdet(const Homog& p, const Homog& q) { return p.x * q.y - q.x * p.y; }

// Map sending z1, z2, z3 to 0, 1, infinity.
MoebiusMap to_standard(const std::array<ExtComplex, 3>& z) {
  const auto& [z1, z2, z3] = z;
  if (z1.infinite) return MoebiusMap::from_coefficients(0.0, z2.z - z3.z, 1.0, -z3.z);
  if (z2.infinite) return MoebiusMap::from_coefficients(1.0, -z1.z, 1.0, -z3.z);
  if (z3.infinite) return MoebiusMap::from_coefficients(1.0, -z1.z, 0.0, z2.z - z1.z);
  Complex k = z2.z - z3.z;
  Complex m = z2.z - z1.z;
  return MoebiusMap::from_coefficients(k, -z1.z * k, m, -z3.z * m);
}

void require_distinct(const std::array<ExtComplex, 3>& z, const char* which) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (chordal_distance(z[i], z[j]) < 1e-12)
        throw Error(ErrorCode::DegenerateTriple, std::string(which) + " triple has a repeated point");
}

}  // namespace

ExtComplex stereographic(const Vec3& q) {
  double rho2 = q[0] * q[0] + q[1] * q[1];
  double below = q[2] > 0.0 ? rho2 / (1.0 + q[2]) : 1.0 - q[2];
  if (below == 0.0) return ExtComplex::inf();
  return ExtComplex(Complex(q[0], -q[1]) / below);
}

Vec3 inverse_stereographic(const ExtComplex& w) {
  if (w.infinite) return Vec3(0.0, 0.0, 1.0);
  double n = std::norm(w.z);
  if (!std::isfinite(n)) return Vec3(0.0, 0.0, 1.0);
  double den = 1.0 + n;
  return Vec3(2.0 * w.z.real() / den, -2.0 * w.z.imag() / den, (n - 1.0) / den);
}

double chordal_distance(const ExtComplex& a, const ExtComplex& b) {
  return (inverse_stereographic(a) - inverse_stereographic(b)).norm();
}

MoebiusMap MoebiusMap::from_coefficients(Complex a, Complex b, Complex c, Complex d) {
  Complex det = a * d - b * c;
  if (std::abs(det) == 0.0) throw Error(ErrorCode::DegenerateTriple, "singular Moebius coefficients");
  Complex s = std::sqrt(det);
  return MoebiusMap{a / s, b / s, c / s, d / s};
}

ExtComplex MoebiusMap::apply(const ExtComplex& z) const {
  Homog h = homog(z);
  Complex num = a * h.x + b * h.y;
  Complex den = c * h.x + d * h.y;
  if (den == Complex(0.0)) return ExtComplex::inf();
  return ExtComplex(num / den);
}

Vec3 MoebiusMap::apply_sphere(const Vec3& q) const { return inverse_stereographic(apply(stereographic(q))); }

MoebiusMap MoebiusMap::inverse() const { return MoebiusMap{d, -b, -c, a}; }

MoebiusMap MoebiusMap::compose(const MoebiusMap& inner) const {
  return MoebiusMap::from_coefficients(a * inner.a + b * inner.c, a * inner.b + b * inner.d,
                                       c * inner.a + d * inner.c, c * inner.b + d * inner.d);
}

OrientedCircle moebius_apply_circle(const MoebiusMap& t, const OrientedCircle& c) {
  auto pts = c.sample_points();
  return OrientedCircle::through(t.apply_sphere(pts[0]), t.apply_sphere(pts[1]), t.apply_sphere(pts[2]));
}

MoebiusMap mobius_from_three_points(const std::array<ExtComplex, 3>& src, const std::array<ExtComplex, 3>& dst) {
  require_distinct(src, "source");
  require_distinct(dst, "target");
  return to_standard(dst).inverse().compose(to_standard(src));
}

Complex cross_ratio(const ExtComplex& z1, const ExtComplex& z2, const ExtComplex& w1, const ExtComplex& w2) {
  Homog a = homog(z1), b = homog(z2), c = homog(w1), d = homog(w2);
  return hdet(a, c) * hdet(b, d) / (hdet(a, b) * hdet(c, d));
}

double projective_distance(const MoebiusMap& m, const MoebiusMap& reference) {
  auto norm = [](Complex a, Complex b, Complex c, Complex d) {
    return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
  };
  double ref = norm(reference.a, reference.b, reference.c, reference.d);
  double minus = norm(m.a - reference.a, m.b - reference.b, m.c - reference.c, m.d - reference.d);
  double plus = norm(m.a + reference.a, m.b + reference.b, m.c + reference.c, m.d + reference.d);
  return std::min(minus, plus) / ref;
}

}  // namespace circpoly
