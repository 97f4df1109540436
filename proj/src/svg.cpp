#include "circpoly/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "circpoly/hyperbolic.hpp"

namespace circpoly {

namespace {

constexpr const char* kGreen = "#2a9d3a";
constexpr const char* kBlack = "#111111";
constexpr const char* kLine = "#8a8a8a";
constexpr const char* kRed = "#c0392b";

// Fixed precision keeps output byte-identical across runs.
std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5f", std::abs(x) < 5e-6 ? 0.0 : x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// Screen coordinates: the y axis points down.
Eigen::Vector2d screen(const Eigen::Vector2d& z) { return Eigen::Vector2d(z[0], -z[1]); }

std::string polyline(const std::vector<Eigen::Vector2d>& pts, const char* color, double width,
                     const char* extra = "") {
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << num(width) << "\"" << extra
     << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Eigen::Vector2d s = screen(pts[i]);
    os << (i ? " " : "") << num(s[0]) << "," << num(s[1]);
  }
  os << "\"/>\n";
  return os.str();
}

std::vector<Eigen::Vector2d> sample_line(const Vec3& normal) {
  Vec3 foot = closest_to_origin(normal);
  Vec3 t = line_tangent(normal, foot);
  std::vector<Eigen::Vector2d> pts;
  for (int i = -120; i <= 120; ++i) pts.push_back(poincare(geodesic_point(foot, t, i * 0.1)));
  return pts;
}

std::vector<Eigen::Vector2d> sample_segment(const Vec3& a, const Vec3& b) {
  double length = hyp_distance(a, b);
  std::vector<Eigen::Vector2d> pts;
  if (length < 1e-12) return {poincare(a), poincare(b)};
  Vec3 t = direction_to(a, b);
  const int steps = 48;
  for (int i = 0; i <= steps; ++i) pts.push_back(poincare(geodesic_point(a, t, length * i / steps)));
  return pts;
}

std::string header(double x0, double y0, double w, double h) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(x0) << " " << num(y0) << " " << num(w) << " "
     << num(h) << "\" width=\"640\" height=\"" << static_cast<int>(std::lround(640.0 * h / w)) << "\">\n";
  return os.str();
}

std::string caption(double x, double y, double size, const std::string& text) {
  std::ostringstream os;
  os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\" font-size=\"" << num(size)
     << "\">" << escape(text) << "</text>\n";
  return os.str();
}

// Hyperboloid point to the Euclidean direction of a nearby point, in the
// Poincare chart.
Eigen::Vector2d chart_direction(const Vec3& from, const Vec3& to) {
  Vec3 t = direction_to(from, to);
  Eigen::Vector2d d = poincare(geodesic_point(from, t, 1e-3)) - poincare(from);
  return d.normalized();
}

}  // namespace

std::string link_svg(const CPolyhedron& cp, const CLink& link) {
  std::ostringstream os;
  os << header(-1.1, -1.2, 2.2, 2.3);
  os << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"#f7f7f2\" stroke=\"" << kBlack << "\" stroke-width=\"0.006\"/>\n";
  const std::string& name = cp.poly.name(link.vertex);

  if (!link.ok()) {
    for (const Vec3& n : link.lines.normals) os << polyline(sample_line(n), kRed, 0.008);
    os << caption(-1.08, -1.1, 0.06,
                  "link at " + name + " not proper: " + std::string(proper_status_name(link.proper.status)) +
                      (link.proper.index >= 0 ? " at " + std::to_string(link.proper.index) : ""));
    os << "</svg>\n";
    return os.str();
  }

  for (const Vec3& n : link.lines.normals)
    os << polyline(sample_line(n), kLine, 0.004, " stroke-dasharray=\"0.02 0.015\"");

  const GreenBlackPolygon& poly = link.polygon;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3& a = poly.positions[k];
    const Vec3& b = poly.positions[(k + 1) % n];
    bool green = poly.edges[k].color == Color::Green;
    os << polyline(sample_segment(a, b), green ? kGreen : kBlack, 0.012);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3& p = poly.positions[k];
    const GBVertex& v = poly.vertices[k];
    Eigen::Vector2d s = screen(poincare(p));
    os << "<circle cx=\"" << num(s[0]) << "\" cy=\"" << num(s[1]) << "\" r=\"0.014\" fill=\""
       << (v.color == Color::Green ? kGreen : kBlack) << "\"/>\n";
    bool right = v.color == Color::Black && v.angle.branch == ComplexAngle::Branch::Real &&
                 std::abs(v.angle.value - std::numbers::pi / 2) < 1e-8;
    if (right) {
      // Conformal chart, so a Euclidean square marks the right angle.
      const double size = 0.045;
      Eigen::Vector2d u = chart_direction(p, poly.positions[(k + n - 1) % n]) * size;
      Eigen::Vector2d w = chart_direction(p, poly.positions[(k + 1) % n]) * size;
      Eigen::Vector2d z = poincare(p);
      os << polyline({z + u, z + u + w, z + w}, kBlack, 0.005);
    }
  }
  os << caption(-1.08, -1.1, 0.06,
                "link at " + name + ": " + std::to_string(n) + " vertices, " +
                    std::to_string(poly.green_edge_count()) + " green edges");
  os << "</svg>\n";
  return os.str();
}

std::string overview_svg(const AbstractPolyhedron& poly, const std::vector<OrientedCircle>& circles) {
  // Projection point: the Fibonacci-sphere sample farthest from every circle.
  const int samples = 400;
  Vec3 best(0.0, 0.0, 1.0);
  double best_gap = -1.0;
  for (int i = 0; i < samples; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / samples;
    double phi = i * std::numbers::pi * (3.0 - std::sqrt(5.0));
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    Vec3 q(r * std::cos(phi), r * std::sin(phi), z);
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& c : circles) {
      SphericalCap cap = c.to_cap();
      gap = std::min(gap, std::abs(std::acos(std::clamp(q.dot(cap.center), -1.0, 1.0)) - cap.radius));
    }
    if (gap > best_gap) best_gap = gap, best = q;
  }
  // Rotation sending the projection point to infinity.
  MoebiusMap rot = MoebiusMap::identity();
  ExtComplex w = stereographic(best);
  if (!w.infinite) {
    const Complex i(0.0, 1.0);
    rot = MoebiusMap::from_coefficients(i * std::conj(w.z), i, i, -i * w.z);
  }

  std::vector<PlanarOrientedCircle> planar;
  double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
  for (const auto& c : circles) {
    PlanarOrientedCircle pc = moebius_apply_circle(rot, c).to_planar();
    planar.push_back(pc);
    if (pc.kind == PlanarOrientedCircle::Kind::Circle) {
      lo_x = std::min(lo_x, pc.center.real() - pc.radius);
      hi_x = std::max(hi_x, pc.center.real() + pc.radius);
      lo_y = std::min(lo_y, -pc.center.imag() - pc.radius);
      hi_y = std::max(hi_y, -pc.center.imag() + pc.radius);
    }
  }
  if (lo_x > hi_x) lo_x = lo_y = -1.0, hi_x = hi_y = 1.0;
  double span = std::max(hi_x - lo_x, hi_y - lo_y);
  double pad = 0.06 * span;
  double stroke = span / 400.0;

  std::ostringstream os;
  os << header(lo_x - pad, lo_y - pad, hi_x - lo_x + 2 * pad, hi_y - lo_y + 2 * pad);
  for (std::size_t k = 0; k < planar.size(); ++k) {
    const PlanarOrientedCircle& pc = planar[k];
    if (pc.kind != PlanarOrientedCircle::Kind::Circle) continue;  // excluded by the choice of chart
    double cx = pc.center.real(), cy = -pc.center.imag(), r = pc.radius;
    // Only a bounded companion disk is shaded.
    os << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r) << "\" fill=\"#1f4e79\" fill-opacity=\""
       << (pc.orientation == 1 ? "0.06" : "0") << "\" stroke=\"#1f4e79\" stroke-width=\"" << num(stroke) << "\"/>\n";
    // Arrow at the lowest point; counterclockwise travel moves right there.
    double a = std::min(span / 60.0, r / 3.0), dir = pc.orientation;
    double by = cy + r;
    os << "<polygon fill=\"#1f4e79\" points=\"" << num(cx + dir * a) << "," << num(by) << " " << num(cx - dir * a) << ","
       << num(by - 0.6 * a) << " " << num(cx - dir * a) << "," << num(by + 0.6 * a) << "\"/>\n";
    double size = std::min(span / 30.0, r / 2.0);
    os << "<text x=\"" << num(cx) << "\" y=\"" << num(cy - r + 1.3 * size) << "\" font-family=\"sans-serif\" font-size=\""
       << num(size) << "\" text-anchor=\"middle\">" << escape(poly.name(static_cast<int>(k))) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace circpoly
