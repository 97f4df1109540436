#include <doctest.h>

#include <cmath>
#include <numbers>

#include "circpoly/hyperbolic.hpp"
#include "circpoly/random.hpp"
#include "support.hpp"

using namespace circpoly;
using circpoly::testing::code_of;
using std::numbers::pi;

namespace {

Vec3 transport(const DiskModel& model, const MoebiusMap& t, const Vec3& w) {
  return model.point_from_sphere(t.apply_sphere(model.point_to_sphere(w)));
}

Vec3 random_point(Rng& rng, double radius = 2.0) {
  double r = rng.uniform(0.0, radius), a = rng.uniform(0.0, 2 * pi);
  return geodesic_point(origin_point(), Vec3(std::cos(a), std::sin(a), 0.0), r);
}

Vec3 random_normal(Rng& rng, double radius = 1.5) {
  Vec3 p = random_point(rng, radius);
  double a = rng.uniform(0.0, 2 * pi);
  Vec3 t = direction_to(p, geodesic_point(origin_point(), Vec3(std::cos(a), std::sin(a), 0.0), 3.0));
  return line_through(p, t);
}

}  // namespace

TEST_CASE("theta curve inverse cosine") {
  CHECK(acos_theta(-1.0).branch == ComplexAngle::Branch::Real);
  CHECK(acos_theta(-1.0).value == doctest::Approx(pi));
  CHECK(acos_theta(1.0).value == 0.0);
  CHECK(acos_theta(0.0).value == doctest::Approx(pi / 2));
  auto two = acos_theta(2.0);
  CHECK(two.branch == ComplexAngle::Branch::Imaginary);
  CHECK(two.value == doctest::Approx(1.3169578969248166).epsilon(1e-14));
  for (int i = 0; i <= 2000; ++i) {
    double r = -10.0 + 0.01 * i;
    CHECK(std::abs(cos_theta(acos_theta(r)) - r) <= 1e-12 * std::max(1.0, std::abs(r)));
  }
  for (auto a : {ComplexAngle::real(0.3), ComplexAngle::imaginary(2.0), ComplexAngle::phase_shifted(0.7)}) {
    auto back = acos_theta(cos_theta(a));
    CHECK(back.branch == a.branch);
    CHECK(back.value == doctest::Approx(a.value).epsilon(1e-12));
  }
  CHECK(theta_coordinate(ComplexAngle::imaginary(1.0)) < theta_coordinate(ComplexAngle::real(0.0)) + 1e-300);
  CHECK(theta_coordinate(ComplexAngle::real(pi)) <= theta_coordinate(ComplexAngle::phase_shifted(0.0)));
}

TEST_CASE("complex angle of oriented lines") {
  Vec3 n1(1, 0, 0);
  Vec3 n2(-std::cosh(1.0), 0.0, std::sinh(1.0));
  auto a = complex_angle(n1, n2);
  CHECK(a.branch == ComplexAngle::Branch::Imaginary);
  CHECK(a.value == doctest::Approx(1.0).epsilon(1e-12));
  Vec3 n3(std::cosh(0.5), 0.0, std::sinh(0.5));
  auto b = complex_angle(n1, n3);
  CHECK(b.branch == ComplexAngle::Branch::PhaseShifted);
  CHECK(b.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(complex_angle(n1, Vec3(-1, 0, 0)).value == doctest::Approx(0.0).epsilon(1e-15));

  // Model inner products agree with inversive distances of the carriers.
  DiskModel model;
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    Vec3 m1 = random_normal(rng), m2 = random_normal(rng);
    double d = inv_dist(model.carrier(m1), model.carrier(m2));
    CHECK(cos_theta(complex_angle(m1, m2)) == doctest::Approx(d).epsilon(1e-10));
    CHECK(std::abs(inv_dist(model.carrier(m1), model.boundary())) < 1e-12);
  }
}

TEST_CASE("lune angle at a finite vertex") {
  // Lines through the origin at directions 0 and alpha, both counterclockwise
  // around the wedge between them, give interior angle alpha.
  double alpha = 1.1;
  Vec3 o = origin_point();
  Vec3 n1 = line_through(o, Vec3(1, 0, 0));
  Vec3 n2 = line_through(o, Vec3(-std::cos(alpha), -std::sin(alpha), 0));
  Vec3 inside = geodesic_point(o, Vec3(std::cos(alpha / 2), std::sin(alpha / 2), 0), 0.3);
  CHECK(eta3(n1, inside) > 0);
  CHECK(eta3(n2, inside) > 0);
  CHECK(complex_angle(n1, n2).value == doctest::Approx(alpha).epsilon(1e-12));
}

TEST_CASE("standard model matches the plane chart") {
  DiskModel model;
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    Vec3 q = rng.unit_vector();
    if (q[2] > -0.05) q[2] = -std::abs(q[2]) - 0.05, q.normalize();
    Vec3 w = model.point_from_sphere(q);
    auto z = stereographic(q);
    CHECK(std::abs(poincare(w)[0] - z.z.real()) < 1e-12);
    CHECK(std::abs(poincare(w)[1] - z.z.imag()) < 1e-12);
    CHECK((model.point_to_sphere(w) - q).norm() < 1e-12);
  }
  CHECK(code_of([&] { model.point_from_sphere(Vec3(1, 0, 0)); }) == ErrorCode::PointOnBoundary);
  CHECK(code_of([&] { model.point_from_sphere(Vec3(0, 0, 1)); }) == ErrorCode::PointOnBoundary);
}

TEST_CASE("left side of a line is the companion disk of its carrier") {
  Rng rng(6);
  for (int k = 0; k < 5; ++k) {
    DiskModel model(rng.circle(0.4));
    for (int i = 0; i < 50; ++i) {
      Vec3 n = random_normal(rng);
      Vec3 p = random_point(rng);
      double s = eta3(n, p);
      if (std::abs(s) < 1e-6) continue;
      double side = model.carrier(n).side(model.point_to_sphere(p));
      CHECK((side > 0) == (s > 0));
      // The model frame is positively oriented: left of the tangent is positive.
      Vec3 foot = foot_of_perpendicular(n, p);
      Vec3 left = rotate_left(foot, line_tangent(n, foot));
      CHECK(eta3(n, left) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("model orientation follows the sphere") {
  // A counterclockwise triangle in the model maps to a triangle whose
  // circumscribed circle keeps the interior on its left.
  Rng rng(8);
  for (int k = 0; k < 20; ++k) {
    DiskModel model(rng.circle(0.4));
    Vec3 o = origin_point();
    Vec3 a = geodesic_point(o, Vec3(1, 0, 0), 0.5);
    Vec3 b = geodesic_point(o, Vec3(std::cos(2.0), std::sin(2.0), 0), 0.5);
    Vec3 c = geodesic_point(o, Vec3(std::cos(4.0), std::sin(4.0), 0), 0.5);
    auto circ = OrientedCircle::through(model.point_to_sphere(a), model.point_to_sphere(b), model.point_to_sphere(c));
    CHECK(circ.side(model.point_to_sphere(o)) > 0);
  }
}

TEST_CASE("hyperbolic distance") {
  Vec3 o = origin_point();
  CHECK(hyp_distance(o, o) == 0.0);
  Vec3 q = from_poincare(Eigen::Vector2d(std::tanh(0.5), 0.0));
  CHECK(hyp_distance(o, q) == doctest::Approx(1.0).epsilon(1e-14));

  Rng rng(10);
  DiskModel model;
  for (int i = 0; i < 100; ++i) {
    Vec3 p = random_point(rng), r = random_point(rng), s = random_point(rng);
    CHECK(hyp_distance(p, r) == hyp_distance(r, p));
    CHECK(hyp_distance(p, s) <= hyp_distance(p, r) + hyp_distance(r, s) + 1e-12);
    auto t = disk_automorphism(Complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)), rng.uniform(0, 6));
    CHECK(hyp_distance(transport(model, t, p), transport(model, t, r)) ==
          doctest::Approx(hyp_distance(p, r)).epsilon(1e-10));
  }
}

TEST_CASE("common perpendicular") {
  Rng rng(12);
  int tested = 0;
  for (int i = 0; i < 400 && tested < 100; ++i) {
    Vec3 n1 = random_normal(rng), n2 = random_normal(rng);
    double d = -eta3(n1, n2);
    if (std::abs(d) < 1.05) {
      if (std::abs(d) < 0.95) CHECK(code_of([&] { common_perpendicular(n1, n2); }) == ErrorCode::LinesIntersect);
      continue;
    }
    ++tested;
    auto seg = common_perpendicular(n1, n2);
    CHECK(seg.length() == doctest::Approx(complex_angle(n1, n2).value).epsilon(1e-9));
    CHECK(std::abs(eta3(n1, seg.start)) < 1e-10);
    CHECK(std::abs(eta3(n2, seg.end)) < 1e-10);
    Vec3 t = direction_to(seg.start, seg.end);
    CHECK(std::abs(eta3(t, line_tangent(n1, seg.start))) < 1e-9);
    Vec3 back = direction_to(seg.end, seg.start);
    CHECK(std::abs(eta3(back, line_tangent(n2, seg.end))) < 1e-9);
  }
  CHECK(tested == 100);
  Vec3 n(1, 0, 0);
  CHECK(code_of([&] { common_perpendicular(n, Vec3(-1, 0, 0)); }) == ErrorCode::LinesParallel);
}

TEST_CASE("translation along a line") {
  Rng rng(14);
  for (int k = 0; k < 10; ++k) {
    DiskModel model(rng.circle(0.4));
    Vec3 n = random_normal(rng);
    auto line = OrientedLine::from_normal(model, n);
    auto id = translate_along_line(line, 0.0);
    CHECK(projective_distance(id, MoebiusMap::identity()) < 1e-12);
    double t = rng.uniform(-2.0, 2.0), s = rng.uniform(-2.0, 2.0);
    auto ft = translate_along_line(line, t);
    Vec3 on = closest_to_origin(n);
    Vec3 moved = transport(model, ft, on);
    CHECK(std::abs(eta3(n, moved)) < 1e-9);
    CHECK(hyp_distance(on, moved) == doctest::Approx(std::abs(t)).epsilon(1e-9));
    // Moves along the orientation for positive t.
    CHECK(eta3(moved - on, line_tangent(n, on)) * t > 0);
    for (int i = 0; i < 10; ++i) {
      Vec3 p = random_point(rng);
      CHECK(signed_distance(n, transport(model, ft, p)) == doctest::Approx(signed_distance(n, p)).epsilon(1e-9));
    }
    auto fs = translate_along_line(line, s);
    CHECK(projective_distance(fs.compose(ft), translate_along_line(line, s + t)) < 1e-9);
  }
}

TEST_CASE("line helpers") {
  Vec3 o = origin_point();
  Vec3 n = line_through(o, Vec3(1, 0, 0));
  CHECK(std::abs(eta3(n, o)) < 1e-15);
  Vec3 p = geodesic_point(o, Vec3(0, 1, 0), 0.8);
  CHECK(signed_distance(n, p) == doctest::Approx(0.8));
  CHECK(hyp_distance(foot_of_perpendicular(n, p), o) < 1e-12);
  Vec3 m = line_through(o, Vec3(0, 1, 0));
  CHECK(hyp_distance(line_intersection(n, m), o) < 1e-12);
  CHECK(angle_at(o, geodesic_point(o, Vec3(1, 0, 0), 1.0), p) == doctest::Approx(pi / 2));
  auto [start, end] = ideal_endpoints(OrientedLine::from_normal(DiskModel(), n));
  // Traversed along +x: from -1 to +1 in the plane chart.
  CHECK(std::abs(stereographic(start).z - Complex(-1.0, 0.0)) < 1e-12);
  CHECK(std::abs(stereographic(end).z - Complex(1.0, 0.0)) < 1e-12);
}
