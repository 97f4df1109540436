#pragma once

#include <string_view>
#include <utility>

#include "circpoly/moebius.hpp"

namespace circpoly {

// Value on the curve iR+ ∪ [0, pi] ∪ (pi + iR+).
struct ComplexAngle {
  enum class Branch { Imaginary, Real, PhaseShifted };

  Branch branch = Branch::Real;
  double value = 0.0;

  static ComplexAngle real(double angle) { return ComplexAngle{Branch::Real, angle}; }
  static ComplexAngle imaginary(double distance) { return ComplexAngle{Branch::Imaginary, distance}; }
  static ComplexAngle phase_shifted(double distance) { return ComplexAngle{Branch::PhaseShifted, distance}; }
};

std::string_view branch_name(ComplexAngle::Branch branch);

ComplexAngle acos_theta(double r);
double cos_theta(const ComplexAngle& a);
// Arc parameter along the curve, increasing from the imaginary end to the
// phase-shifted end; the distance between angles is measured with it.
double theta_coordinate(const ComplexAngle& a);
inline double theta_distance(const ComplexAngle& a, const ComplexAngle& b) {
  return std::abs(theta_coordinate(a) - theta_coordinate(b));
}

// Hyperbolic plane carried by the open companion disk of `boundary`.
// Model points are unit time-like vectors (x, y, t), t > 0, of the form
// x^2 + y^2 - t^2; oriented lines are unit space-like normals whose
// positive side (eta3 > 0) is the left half-plane.
class DiskModel {
 public:
  DiskModel() : DiskModel(standard_boundary()) {}
  explicit DiskModel(const OrientedCircle& boundary);

  // Southern hemisphere; its Poincare coordinates are the plane coordinates
  // of the stereographic chart.
  static OrientedCircle standard_boundary();

  const OrientedCircle& boundary() const { return boundary_; }

  // Coordinates of a vector orthogonal to the boundary.
  Vec3 to_model(const Vec4& x) const;
  Vec4 from_model(const Vec3& m) const;

  // Throws PointOnBoundary unless q lies strictly inside the disk.
  Vec3 point_from_sphere(const Vec3& q, double tol = kDefaultTol) const;
  Vec3 point_to_sphere(const Vec3& w) const;
  // Ideal point (future null vector) to the sphere.
  Vec3 ideal_to_sphere(const Vec3& n) const;

  Vec3 line_normal(const OrientedCircle& carrier) const;
  OrientedCircle carrier(const Vec3& normal) const;

 private:
  OrientedCircle boundary_;
  Vec4 e0_, e1_, e2_;
};

struct OrientedLine {
  DiskModel model;
  OrientedCircle carrier;

  Vec3 normal() const { return model.line_normal(carrier); }
  static OrientedLine from_normal(const DiskModel& model, const Vec3& normal) {
    return OrientedLine{model, model.carrier(normal)};
  }
};

ComplexAngle complex_angle(const OrientedLine& l1, const OrientedLine& l2);
ComplexAngle complex_angle(const Vec3& n1, const Vec3& n2);

// Hyperboloid helpers; every point argument is a model point.
Vec3 origin_point();
Vec3 normalize_point(const Vec3& w);
Vec3 normalize_normal(const Vec3& n);
double hyp_distance(const Vec3& p, const Vec3& q);
double hyp_distance_sphere(const DiskModel& model, const Vec3& p, const Vec3& q, double tol = kDefaultTol);
// Signed distance to a line, positive on its left.
double signed_distance(const Vec3& normal, const Vec3& p);
// Unit tangent at p pointing towards q.
Vec3 direction_to(const Vec3& p, const Vec3& q);
// Unit tangent of the oriented line at one of its points.
inline Vec3 line_tangent(const Vec3& normal, const Vec3& p) { return lcross(normal, p); }
// Rotation by +pi/2 in the tangent plane at p.
inline Vec3 rotate_left(const Vec3& p, const Vec3& tangent) { return lcross(p, tangent); }
// Angle at p between the geodesics to a and b.
double angle_at(const Vec3& p, const Vec3& a, const Vec3& b);
double angle_between(const Vec3& p, const Vec3& t1, const Vec3& t2);
// Point at distance s along the geodesic from p with unit tangent t.
Vec3 geodesic_point(const Vec3& p, const Vec3& t, double s);
// Oriented line through p with unit tangent t.
Vec3 line_through(const Vec3& p, const Vec3& t);
// Oriented line from p towards q.
Vec3 line_from_to(const Vec3& p, const Vec3& q);
Vec3 foot_of_perpendicular(const Vec3& normal, const Vec3& p);
Vec3 closest_to_origin(const Vec3& normal);
// Intersection of two meeting lines.  Throws LinesParallel otherwise.
Vec3 line_intersection(const Vec3& n1, const Vec3& n2, double tol = kDefaultTol);
inline Eigen::Vector2d klein(const Vec3& w) { return Eigen::Vector2d(w[0] / w[2], w[1] / w[2]); }
inline Eigen::Vector2d poincare(const Vec3& w) { return Eigen::Vector2d(w[0] / (1.0 + w[2]), w[1] / (1.0 + w[2])); }
Vec3 from_poincare(const Eigen::Vector2d& z);

struct GeodesicSegment {
  Vec3 start;
  Vec3 end;
  double length() const { return hyp_distance(start, end); }
};

// Segment orthogonal to two ultra-parallel lines, from the first to the
// second.  Throws LinesIntersect or LinesParallel.
GeodesicSegment common_perpendicular(const Vec3& n1, const Vec3& n2, double tol = kDefaultTol);
GeodesicSegment common_perpendicular(const OrientedLine& l1, const OrientedLine& l2, double tol = kDefaultTol);

// Ideal endpoints (start, end) of an oriented line, as sphere points.
std::pair<Vec3, Vec3> ideal_endpoints(const OrientedLine& l);

// Hyperbolic translation of signed length t along the oriented line.
MoebiusMap translate_along_line(const OrientedLine& l, double t);

// Orientation-preserving isometry of the standard model given in its
// Poincare coordinates: z -> e^{i rot} (z - a) / (1 - conj(a) z).
MoebiusMap disk_automorphism(Complex a, double rot);

}  // namespace circpoly
