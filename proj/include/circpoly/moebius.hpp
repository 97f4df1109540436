#pragma once

#include <array>
#include <complex>

#include "circpoly/circle.hpp"

namespace circpoly {

// Point of the extended complex plane.
struct ExtComplex {
  Complex z{};
  bool infinite = false;

  static ExtComplex inf() { return ExtComplex{Complex{}, true}; }
  ExtComplex() = default;
  ExtComplex(Complex value) : z(value) {}
  ExtComplex(double value) : z(value) {}
  ExtComplex(Complex value, bool at_infinity) : z(value), infinite(at_infinity) {}
};

// North pole to infinity, equator to the unit circle; preserves orientation
// for the outward-normal orientation of the sphere.
ExtComplex stereographic(const Vec3& q);
Vec3 inverse_stereographic(const ExtComplex& w);

// Chordal distance between the sphere images.
double chordal_distance(const ExtComplex& a, const ExtComplex& b);

// z -> (a z + b) / (c z + d), stored with a d - b c = 1.
struct MoebiusMap {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static MoebiusMap identity() { return MoebiusMap{}; }
  static MoebiusMap from_coefficients(Complex a, Complex b, Complex c, Complex d);

  ExtComplex apply(const ExtComplex& z) const;
  Vec3 apply_sphere(const Vec3& q) const;
  MoebiusMap inverse() const;
  // (*this) after `inner`.
  MoebiusMap compose(const MoebiusMap& inner) const;
};

inline ExtComplex moebius_apply_point(const MoebiusMap& t, const ExtComplex& z) { return t.apply(z); }
OrientedCircle moebius_apply_circle(const MoebiusMap& t, const OrientedCircle& c);

// Throws DegenerateTriple when either triple has a repeated point.
MoebiusMap mobius_from_three_points(const std::array<ExtComplex, 3>& src, const std::array<ExtComplex, 3>& dst);

// (z1 - w1)(z2 - w2) / ((z1 - z2)(w1 - w2)) with the usual limits at infinity.
Complex cross_ratio(const ExtComplex& z1, const ExtComplex& z2, const ExtComplex& w1, const ExtComplex& w2);

// Relative distance between maps up to the sign ambiguity of SL(2, C).
double projective_distance(const MoebiusMap& m, const MoebiusMap& reference);

}  // namespace circpoly
