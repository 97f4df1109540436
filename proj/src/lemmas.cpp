#include "circpoly/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "circpoly/error.hpp"

namespace circpoly {

namespace {

constexpr double kRight = std::numbers::pi / 2.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Squared chord 2 (cosh d - 1), monotone in the distance.  Computing it from
// the difference keeps relative precision for nearby points, which the
// minimizer needs to locate the foot accurately.
double chord2(const Vec3& p, const Vec3& q) {
  Vec3 d = p - q;
  return eta3(d, d);
}

struct Segment {
  Vec3 from, tangent;
  double length;

  Segment(const Vec3& a, const Vec3& b) : from(a), tangent(direction_to(a, b)), length(hyp_distance(a, b)) {}
  Vec3 at(double t) const { return geodesic_point(from, tangent, t * length); }
  Vec3 tangent_at(double t) const {
    double s = t * length;
    return std::sinh(s) * from + std::cosh(s) * tangent;
  }
};

// Angle at x between the edge direction and the geodesic to y; pi/2 when y
// coincides with x (no direction to measure).
double meeting_angle(const Vec3& x, const Vec3& edge_tangent, const Vec3& y) {
  if (hyp_distance(x, y) < 1e-12) return kRight;
  return angle_between(x, edge_tangent, direction_to(x, y));
}

}  // namespace

Vec3 support_line(double angle, double distance) {
  return Vec3(-std::cosh(distance) * std::cos(angle), -std::cosh(distance) * std::sin(angle), -std::sinh(distance));
}

Vec3 flow_along(const Vec3& n, const Vec3& p, double s) {
  Vec3 f = closest_to_origin(n);
  Vec3 t = line_tangent(n, f);
  double alpha = -eta3(p, f), beta = eta3(p, t), gamma = eta3(p, n);
  double ch = std::cosh(s), sh = std::sinh(s);
  return alpha * (ch * f + sh * t) + beta * (sh * f + ch * t) + gamma * n;
}

double golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  double mid = 0.5 * (a + b);
  // The interval may have collapsed onto an endpoint of [lo, hi].
  double best = mid, fbest = f(mid);
  for (double e : {lo, hi}) {
    double fe = f(e);
    if (fe < fbest) best = e, fbest = fe;
  }
  return best;
}

HarnessResult hypercycle_monotonicity_check(const Vec3& n, const Vec3& p, double offset, int samples, double t_max) {
  if (samples < 1 || !(t_max > 0.0)) throw Error(ErrorCode::HypothesisViolated, "need positive samples and range");
  Vec3 foot = foot_of_perpendicular(n, p);
  Vec3 q = std::cosh(offset) * foot + std::sinh(offset) * n;
  HarnessResult r;
  r.margin = std::numeric_limits<double>::infinity();
  for (double sign : {1.0, -1.0}) {
    double prev = hyp_distance(p, q);
    for (int i = 1; i <= samples; ++i) {
      double t = sign * t_max * i / samples;
      double d = hyp_distance(p, flow_along(n, q, t));
      r.margin = std::min(r.margin, d - prev);
      if (!(d > prev)) {
        r.holds = false;
        r.detail = "distance did not increase at t = " + std::to_string(t);
      }
      prev = d;
    }
  }
  return r;
}

Vec3 RegionFlowConfig::k() const { return Vec3(std::cosh(half_width), 0.0, -std::sinh(half_width)); }
Vec3 RegionFlowConfig::l() const { return Vec3(-std::cosh(half_width), 0.0, -std::sinh(half_width)); }

HarnessResult region_flow_check(const RegionFlowConfig& cfg, double tol) {
  auto violated = [](const std::string& why) { return Error(ErrorCode::HypothesisViolated, why); };
  if (!(cfg.half_width > 0.0)) throw violated("region needs positive width");
  const Vec3 k = cfg.k(), l = cfg.l(), m = cfg.m();
  auto in_region = [&](const Vec3& p, double slack) {
    return eta3(k, p) > slack && eta3(l, p) > slack && eta3(m, p) > slack;
  };
  if (!in_region(cfg.c, tol)) throw violated("c is not in the region");
  if (!in_region(cfg.B, -tol) || !in_region(cfg.C, -tol)) throw violated("B or C is not in the region");
  Vec3 a = foot_of_perpendicular(k, cfg.c);
  double ab = hyp_distance(a, cfg.b), bc = hyp_distance(cfg.b, cfg.c), ac = hyp_distance(a, cfg.c);
  if (ab <= tol || bc <= tol || std::abs(ab + bc - ac) > 1e-9 * (1.0 + ac))
    throw violated("b is not an interior point of the perpendicular from c to k");
  auto sinh_gap = [](double x, double y) { return std::abs(x - y) > 1e-9 * (1.0 + std::abs(x)); };
  if (sinh_gap(eta3(k, cfg.B), eta3(k, cfg.b))) throw violated("B is not on the hypercycle of k through b");
  if (sinh_gap(eta3(l, cfg.C), eta3(l, cfg.c))) throw violated("C is not on the hypercycle of l through c");
  Vec3 nbc = line_from_to(cfg.b, cfg.c);
  Vec3 end_k(-std::sinh(cfg.half_width), 0.0, std::cosh(cfg.half_width));
  Vec3 end_l(std::sinh(cfg.half_width), 0.0, std::cosh(cfg.half_width));
  double s1 = eta3(nbc, end_k), s2 = eta3(nbc, end_l);
  if (s1 * s2 <= 0.0) throw violated("line bc meets m");
  double far = s1 > 0.0 ? -1.0 : 1.0;
  if (far * eta3(nbc, cfg.B) < -tol || far * eta3(nbc, cfg.C) < -tol)
    throw violated("B or C lies on the side of bc that meets m");

  HarnessResult r;
  double BC = hyp_distance(cfg.B, cfg.C);
  r.margin = BC - bc;
  r.holds = r.margin >= -tol * (1.0 + bc);
  r.equality = std::abs(r.margin) <= kEqualityTol;
  bool moved = hyp_distance(cfg.b, cfg.B) > 1e-2 || hyp_distance(cfg.c, cfg.C) > 1e-2;
  if (r.equality && moved) {
    r.holds = false;
    r.detail = "equality with B != b or C != c";
  } else if (!r.holds) {
    r.detail = "|BC| < |bc|";
  }
  return r;
}

HarnessResult containment_check(const GreenBlackPolygon& p, double angle_tol) {
  const std::size_t n = p.size();
  if (p.positions.size() != n) throw Error(ErrorCode::HypothesisViolated, "containment check needs positions");
  HarnessResult r;
  r.margin = angle_tol;
  auto record = [&](double angle, const std::string& what) {
    double slack = angle_tol - std::abs(angle - kRight);
    if (slack < r.margin) r.margin = slack;
    if (slack < 0.0 && r.holds) {
      r.holds = false;
      r.detail = what + " meets at " + std::to_string(angle);
    }
  };
  std::vector<std::size_t> green;
  for (std::size_t i = 0; i < n; ++i)
    if (p.edges[i].color == Color::Green) green.push_back(i);
  for (std::size_t i : green) {
    Segment e(p.positions[i], p.positions[(i + 1) % n]);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || j == (i + 1) % n) continue;
      const Vec3& v = p.positions[j];
      double t = golden_section_min([&](double s) { return chord2(e.at(s), v); }, 0.0, 1.0);
      record(meeting_angle(e.at(t), e.tangent_at(t), v), "path from green edge " + std::to_string(i) + " to vertex " +
                                                             std::to_string(j));
    }
  }
  for (std::size_t a = 0; a < green.size(); ++a) {
    for (std::size_t b = a + 1; b < green.size(); ++b) {
      Segment e(p.positions[green[a]], p.positions[(green[a] + 1) % n]);
      Segment g(p.positions[green[b]], p.positions[(green[b] + 1) % n]);
      auto inner = [&](double t) {
        Vec3 x = e.at(t);
        return golden_section_min([&](double s) { return chord2(x, g.at(s)); }, 0.0, 1.0);
      };
      double t = golden_section_min([&](double tt) { return chord2(e.at(tt), g.at(inner(tt))); }, 0.0, 1.0);
      double s = inner(t);
      Vec3 x = e.at(t), y = g.at(s);
      std::string what = "perpendicular of green edges " + std::to_string(green[a]) + ", " + std::to_string(green[b]);
      record(meeting_angle(x, e.tangent_at(t), y), what);
      record(meeting_angle(y, g.tangent_at(s), x), what);
    }
  }
  return r;
}

HyperidealPolygonSpec random_hyperideal_spec(Rng& rng, int n, double r_lo, double r_hi) {
  std::vector<double> angles(static_cast<std::size_t>(n));
  for (auto& a : angles) a = rng.uniform(0.0, kTwoPi);
  std::sort(angles.begin(), angles.end());
  HyperidealPolygonSpec spec;
  for (double a : angles) spec.normals.push_back(support_line(a, rng.uniform(r_lo, r_hi)));
  return spec;
}

Sampled<GreenBlackPolygon> random_greenblack_polygon(Rng& rng, int budget) {
  Sampled<GreenBlackPolygon> out;
  for (; out.rejections < budget; ++out.rejections) {
    auto spec = random_hyperideal_spec(rng, rng.integer(3, 8));
    if (!is_proper_hyperideal(spec).proper()) continue;
    out.value = greenblack_from_hyperideal(spec);
    return out;
  }
  throw Error(ErrorCode::RejectionBudgetExceeded, "no proper hyperideal polygon sampled");
}

Sampled<GreenBlackPolygon> random_relaxed_polygon(Rng& rng, int budget) {
  Sampled<GreenBlackPolygon> out;
  for (; out.rejections < budget; ++out.rejections) {
    int n = rng.integer(4, 8);
    std::vector<double> angles(static_cast<std::size_t>(n));
    for (auto& a : angles) a = rng.uniform(0.0, kTwoPi);
    std::sort(angles.begin(), angles.end());
    std::vector<Vec3> pts;
    for (double a : angles) pts.push_back(geodesic_point(origin_point(), Vec3(std::cos(a), std::sin(a), 0.0), rng.uniform(0.5, 2.5)));
    if (!is_convex_polygon(pts)) continue;
    std::vector<Color> colors(pts.size(), Color::Black);
    auto plain = polygon_from_points(pts, colors);
    const std::size_t m = pts.size();
    for (std::size_t i = 0; i < m; ++i) {
      bool acute_ends = plain.vertices[i].angle.value <= kRight && plain.vertices[(i + 1) % m].angle.value <= kRight;
      bool free = colors[(i + m - 1) % m] == Color::Black && colors[(i + 1) % m] == Color::Black;
      if (acute_ends && free) colors[i] = Color::Green;
    }
    if (std::count(colors.begin(), colors.end(), Color::Green) == 0) continue;
    out.value = polygon_from_points(pts, colors);
    return out;
  }
  throw Error(ErrorCode::RejectionBudgetExceeded, "no relaxed polygon sampled");
}

Sampled<std::pair<GreenBlackChain, GreenBlackChain>> random_arm_pair(Rng& rng, int budget) {
  Sampled<std::pair<GreenBlackChain, GreenBlackChain>> out;
  for (; out.rejections < budget; ++out.rejections) {
    auto poly = random_greenblack_polygon(rng, budget).value;
    const int n = static_cast<int>(poly.size());
    int first = rng.integer(0, n - 1);
    int count = rng.integer(3, n);
    if (poly.edges[first].color != Color::Black) continue;
    if (poly.edges[(first + count - 2) % n].color != Color::Black) continue;
    ChainSpec spec = chain_spec(subchain(poly, first, count));
    ChainSpec grown = spec;
    for (std::size_t k = 0; k < grown.lengths.size(); ++k) {
      if (grown.edge_colors[k] == Color::Green && rng.coin()) grown.lengths[k] += rng.uniform(0.0, 0.5);
    }
    for (std::size_t v = 0; v < grown.angles.size(); ++v) {
      bool green = grown.edge_colors[v] == Color::Black && grown.edge_colors[v + 1] == Color::Black;
      if (green && rng.coin()) grown.angles[v] += rng.uniform(0.0, 0.5) * (std::numbers::pi - grown.angles[v]);
    }
    try {
      out.value = {arm_chain_build(spec), arm_chain_build(grown)};
      return out;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonConvex) throw;
    }
  }
  throw Error(ErrorCode::RejectionBudgetExceeded, "no admissible arm chain pair sampled");
}

Sampled<RegionFlowConfig> random_region_flow(Rng& rng, int budget) {
  Sampled<RegionFlowConfig> out;
  for (; out.rejections < budget; ++out.rejections) {
    RegionFlowConfig cfg;
    cfg.half_width = rng.uniform(0.3, 1.5);
    double u = rng.uniform(-0.9, 0.9) * cfg.half_width;
    Vec3 base = geodesic_point(origin_point(), Vec3(1.0, 0.0, 0.0), u);
    cfg.c = geodesic_point(base, Vec3(0.0, 1.0, 0.0), rng.uniform(0.2, 2.0));
    Vec3 a = foot_of_perpendicular(cfg.k(), cfg.c);
    cfg.b = geodesic_point(a, direction_to(a, cfg.c), rng.uniform(0.05, 0.95) * hyp_distance(a, cfg.c));
    // Flow upward along k and l, sometimes not at all.
    auto upward = [&](const Vec3& line, const Vec3& p) {
      if (rng.uniform(0.0, 1.0) < 0.1) return p;
      double s = rng.uniform(0.0, 1.5);
      Vec3 q = flow_along(line, p, s);
      return q[1] >= p[1] ? q : flow_along(line, p, -s);
    };
    cfg.B = upward(cfg.k(), cfg.b);
    cfg.C = upward(cfg.l(), cfg.c);
    try {
      region_flow_check(cfg);
      out.value = cfg;
      return out;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::HypothesisViolated) throw;
    }
  }
  throw Error(ErrorCode::RejectionBudgetExceeded, "no admissible region-flow configuration sampled");
}

}  // namespace circpoly
