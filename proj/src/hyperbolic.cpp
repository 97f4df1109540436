#include "circpoly/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "circpoly/error.hpp"

namespace circpoly {

std::string_view branch_name(ComplexAngle::Branch branch) {
  switch (branch) {
    case ComplexAngle::Branch::Imaginary: return "imaginary";
    case ComplexAngle::Branch::Real: return "real";
    case ComplexAngle::Branch::PhaseShifted: return "phase_shifted";
  }
  return "unknown";
}

ComplexAngle acos_theta(double r) {
  if (r > 1.0) return ComplexAngle::imaginary(std::acosh(r));
  if (r < -1.0) return ComplexAngle::phase_shifted(std::acosh(-r));
  return ComplexAngle::real(std::acos(r));
}

double cos_theta(const ComplexAngle& a) {
  switch (a.branch) {
    case ComplexAngle::Branch::Imaginary: return std::cosh(a.value);
    case ComplexAngle::Branch::Real: return std::cos(a.value);
    case ComplexAngle::Branch::PhaseShifted: return -std::cosh(a.value);
  }
  return 0.0;
}

double theta_coordinate(const ComplexAngle& a) {
  switch (a.branch) {
    case ComplexAngle::Branch::Imaginary: return -a.value;
    case ComplexAngle::Branch::Real: return a.value;
    case ComplexAngle::Branch::PhaseShifted: return std::numbers::pi + a.value;
  }
  return 0.0;
}

OrientedCircle DiskModel::standard_boundary() { return OrientedCircle::from_lorentz(Vec4(0.0, 0.0, -1.0, 0.0)); }

DiskModel::DiskModel(const OrientedCircle& boundary) : boundary_(boundary) {
  const Vec4& c = boundary_.lorentz();
  Vec3 p = boundary_.to_cap().center;
  Vec4 q = null_of(p);
  e0_ = q / eta(q, c) - c;
  // Prefer the x axis so that the standard model matches the plane chart.
  Vec3 x_axis = Vec3::UnitX();
  Vec3 u = std::abs(p[0]) < 0.9 ? Vec3(x_axis - x_axis.dot(p) * p).normalized() : perpendicular_unit(p);
  Vec3 v = p.cross(u);
  e1_ << u, 0.0;
  e2_ << v, 0.0;
}

Vec3 DiskModel::to_model(const Vec4& x) const { return Vec3(eta(x, e1_), eta(x, e2_), -eta(x, e0_)); }

Vec4 DiskModel::from_model(const Vec3& m) const { return m[0] * e1_ + m[1] * e2_ + m[2] * e0_; }

Vec3 DiskModel::point_from_sphere(const Vec3& q, double tol) const {
  Vec4 n = null_of(q);
  double s = eta(n, boundary_.lorentz());
  if (!(s > tol)) throw Error(ErrorCode::PointOnBoundary, "point is not inside the model disk");
  return normalize_point(to_model(n / s - boundary_.lorentz()));
}

Vec3 DiskModel::point_to_sphere(const Vec3& w) const {
  Vec4 x = from_model(w) + boundary_.lorentz();
  return point_of_null(x).normalized();
}

Vec3 DiskModel::ideal_to_sphere(const Vec3& n) const {
  Vec4 x = from_model(n);
  return point_of_null(x).normalized();
}

Vec3 DiskModel::line_normal(const OrientedCircle& carrier) const { return normalize_normal(to_model(carrier.lorentz())); }

OrientedCircle DiskModel::carrier(const Vec3& normal) const { return OrientedCircle::from_lorentz(from_model(normal)); }

ComplexAngle complex_angle(const Vec3& n1, const Vec3& n2) { return acos_theta(-eta3(n1, n2)); }

ComplexAngle complex_angle(const OrientedLine& l1, const OrientedLine& l2) { return complex_angle(l1.normal(), l2.normal()); }

Vec3 origin_point() { return Vec3(0.0, 0.0, 1.0); }

Vec3 normalize_point(const Vec3& w) {
  double q = -eta3(w, w);
  Vec3 p = w / std::sqrt(std::max(q, 0.0));
  return p[2] < 0.0 ? Vec3(-p) : p;
}

Vec3 normalize_normal(const Vec3& n) { return n / std::sqrt(eta3(n, n)); }

double hyp_distance(const Vec3& p, const Vec3& q) {
  Vec3 diff = p - q;
  double chord2 = std::max(eta3(diff, diff), 0.0);
  return 2.0 * std::asinh(std::sqrt(chord2) / 2.0);
}

double hyp_distance_sphere(const DiskModel& model, const Vec3& p, const Vec3& q, double tol) {
  return hyp_distance(model.point_from_sphere(p, tol), model.point_from_sphere(q, tol));
}

double signed_distance(const Vec3& normal, const Vec3& p) { return std::asinh(eta3(normal, p)); }

Vec3 direction_to(const Vec3& p, const Vec3& q) {
  Vec3 t = q + eta3(q, p) * p;
  return t / std::sqrt(eta3(t, t));
}

double angle_between(const Vec3&, const Vec3& t1, const Vec3& t2) {
  double c = eta3(t1, t2) / std::sqrt(eta3(t1, t1) * eta3(t2, t2));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double angle_at(const Vec3& p, const Vec3& a, const Vec3& b) {
  return angle_between(p, direction_to(p, a), direction_to(p, b));
}

Vec3 geodesic_point(const Vec3& p, const Vec3& t, double s) { return std::cosh(s) * p + std::sinh(s) * t; }

Vec3 line_through(const Vec3& p, const Vec3& t) { return normalize_normal(lcross(p, t)); }

Vec3 line_from_to(const Vec3& p, const Vec3& q) { return line_through(p, direction_to(p, q)); }

Vec3 foot_of_perpendicular(const Vec3& normal, const Vec3& p) {
  return normalize_point(p - eta3(normal, p) * normal);
}

Vec3 closest_to_origin(const Vec3& normal) { return foot_of_perpendicular(normal, origin_point()); }

Vec3 line_intersection(const Vec3& n1, const Vec3& n2, double tol) {
  double d = -eta3(n1, n2);
  if (std::abs(d) >= 1.0 - tol) throw Error(ErrorCode::LinesParallel, "lines do not meet in the disk");
  return normalize_point(lcross(n1, n2));
}

Vec3 from_poincare(const Eigen::Vector2d& z) {
  double r2 = z.squaredNorm();
  return Vec3(2.0 * z[0], 2.0 * z[1], 1.0 + r2) / (1.0 - r2);
}

GeodesicSegment common_perpendicular(const Vec3& n1, const Vec3& n2, double tol) {
  double d = -eta3(n1, n2);
  if (std::abs(d) < 1.0 - tol) throw Error(ErrorCode::LinesIntersect, "lines meet; no common perpendicular");
  if (approx_equal(std::abs(d), 1.0, tol)) throw Error(ErrorCode::LinesParallel, "lines are asymptotic");
  Vec3 m = lcross(n1, n2);
  return GeodesicSegment{normalize_point(lcross(n1, m)), normalize_point(lcross(n2, m))};
}

GeodesicSegment common_perpendicular(const OrientedLine& l1, const OrientedLine& l2, double tol) {
  return common_perpendicular(l1.normal(), l2.normal(), tol);
}

std::pair<Vec3, Vec3> ideal_endpoints(const OrientedLine& l) {
  Vec3 n = l.normal();
  Vec3 p = closest_to_origin(n);
  Vec3 t = line_tangent(n, p);
  return {l.model.ideal_to_sphere(p - t), l.model.ideal_to_sphere(p + t)};
}

MoebiusMap translate_along_line(const OrientedLine& l, double t) {
  auto [start, end] = ideal_endpoints(l);
  ExtComplex zs = stereographic(start);
  ExtComplex ze = stereographic(end);
  // s sends the start to 0 and the end to infinity.
  MoebiusMap s;
  if (zs.infinite)
    s = MoebiusMap::from_coefficients(0.0, 1.0, 1.0, -ze.z);
  else if (ze.infinite)
    s = MoebiusMap::from_coefficients(1.0, -zs.z, 0.0, 1.0);
  else
    s = MoebiusMap::from_coefficients(1.0, -zs.z, 1.0, -ze.z);
  MoebiusMap dilate = MoebiusMap::from_coefficients(std::exp(t / 2.0), 0.0, 0.0, std::exp(-t / 2.0));
  return s.inverse().compose(dilate).compose(s);
}

MoebiusMap disk_automorphism(Complex a, double rot) {
  Complex e = std::polar(1.0, rot);
  return MoebiusMap::from_coefficients(e, -a * e, -std::conj(a), 1.0);
}

}  // namespace circpoly
