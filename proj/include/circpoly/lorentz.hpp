#pragma once

#include <Eigen/Dense>

namespace circpoly {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;

// Form of signature (3,1) on circle space: last coordinate is time-like.
inline double eta(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3];
}

// Form of signature (2,1) on the hyperboloid model of a disk.
inline double eta3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] - a[2] * b[2]; }

// Cross product for eta3: eta3(lcross(a, b), a) = eta3(lcross(a, b), b) = 0.
inline Vec3 lcross(const Vec3& a, const Vec3& b) {
  Vec3 c = a.cross(b);
  c[2] = -c[2];
  return c;
}

// The vector eta-orthogonal to a, b and c (zero iff they are linearly dependent).
Vec4 complement(const Vec4& a, const Vec4& b, const Vec4& c);

// Null vector of a point of the unit sphere.
inline Vec4 null_of(const Vec3& q) { return Vec4(q[0], q[1], q[2], 1.0); }

// Sphere point of a nonzero null vector (either time direction).
inline Vec3 point_of_null(const Vec4& n) { return n.head<3>() / n[3]; }

// Unit vector orthogonal to p (p nonzero), chosen deterministically.
inline Vec3 perpendicular_unit(const Vec3& p) {
  Eigen::Index axis;
  p.cwiseAbs().minCoeff(&axis);
  return p.cross(Vec3::Unit(axis)).normalized();
}

// Scales a space-like vector to eta-norm 1.
Vec4 normalize_spacelike(const Vec4& x);

}  // namespace circpoly
