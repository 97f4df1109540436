#include "fixtures.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace circpoly::testing {

namespace {

using std::numbers::pi;

Vec3 along_axis(double angle, double distance) {
  return geodesic_point(origin_point(), Vec3(std::cos(angle), std::sin(angle), 0.0), distance);
}

// Vertices of the open chain with the given lengths and left right-angle turns.
std::vector<Vec3> right_angled_chain(const std::vector<double>& lengths) {
  Vec3 p = origin_point(), t(1.0, 0.0, 0.0);
  std::vector<Vec3> out{p};
  for (double l : lengths) {
    Vec3 q = geodesic_point(p, t, l);
    t = rotate_left(q, std::sinh(l) * p + std::cosh(l) * t);
    p = q;
    out.push_back(p);
  }
  return out;
}

Eigen::Vector2d closing_defect(double b, double g1, const Eigen::Vector2d& g) {
  auto pts = right_angled_chain({b, g1, b, g[0], b, g[1], b});
  const Vec3 &first = pts[0], &second = pts[1], &last = pts[7], &before = pts[6];
  return {angle_at(last, before, first) - pi / 2, angle_at(first, last, second) - pi / 2};
}

}  // namespace

GreenBlackPolygon rhombus(double p, double q) {
  std::vector<Vec3> pts{along_axis(0, p), along_axis(pi / 2, q), along_axis(pi, p), along_axis(3 * pi / 2, q)};
  return polygon_from_points(pts, std::vector<Color>(4, Color::Black));
}

GreenBlackPolygon right_angled_octagon(double b, double g1) {
  Eigen::Vector2d g(b, b);
  for (int it = 0; it < 50; ++it) {
    Eigen::Vector2d f = closing_defect(b, g1, g);
    if (f.norm() < 1e-14) break;
    Eigen::Matrix2d jac;
    const double h = 1e-7;
    for (int j = 0; j < 2; ++j) {
      Eigen::Vector2d gh = g;
      gh[j] += h;
      jac.col(j) = (closing_defect(b, g1, gh) - f) / h;
    }
    g -= jac.partialPivLu().solve(f);
  }
  if (closing_defect(b, g1, g).norm() > 1e-11) throw std::runtime_error("octagon did not close");
  auto pts = right_angled_chain({b, g1, b, g[0], b, g[1], b});
  std::vector<Color> colors;
  for (int k = 0; k < 8; ++k) colors.push_back(k % 2 == 0 ? Color::Black : Color::Green);
  return polygon_from_points(pts, colors);
}

}  // namespace circpoly::testing
