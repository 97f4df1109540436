#include "circpoly/greenblack.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "circpoly/error.hpp"

namespace circpoly {

namespace {

constexpr double kRight = std::numbers::pi / 2.0;

bool same_value(double a, double b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b))); }

// sinh of the signed length from a to b along the oriented line.
double signed_sinh_along(const Vec3& normal, const Vec3& a, const Vec3& b) { return eta3(b, line_tangent(normal, a)); }

std::string fmt_index(std::string_view what, std::size_t i) { return std::string(what) + " " + std::to_string(i); }

}  // namespace

std::string_view color_name(Color c) { return c == Color::Green ? "green" : "black"; }

std::string_view proper_status_name(ProperStatus s) {
  switch (s) {
    case ProperStatus::Proper: return "proper";
    case ProperStatus::IdealVertex: return "ideal_vertex";
    case ProperStatus::NestedLines: return "nested_lines";
    case ProperStatus::VertexOutside: return "vertex_outside";
    case ProperStatus::Unbounded: return "unbounded";
    case ProperStatus::NotConvex: return "not_convex";
  }
  return "unknown";
}

char label_char(Label l) { return l == Label::Plus ? '+' : l == Label::Minus ? '-' : '0'; }

std::size_t GreenBlackPolygon::green_edge_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [](const GBEdge& e) { return e.color == Color::Green; }));
}

ComplexAngle GreenBlackPolygon::element_angle(std::size_t element) const {
  std::size_t k = element / 2;
  if (element % 2 == 0) return vertices[k].angle;
  return ComplexAngle::imaginary(edges[k].length);
}

bool is_convex_polygon(const std::vector<Vec3>& points, double tol) {
  std::vector<Eigen::Vector2d> k;
  for (const auto& p : points) {
    Eigen::Vector2d q = klein(p);
    if (k.empty() || (q - k.back()).norm() > tol) k.push_back(q);
  }
  while (k.size() > 1 && (k.front() - k.back()).norm() <= tol) k.pop_back();
  const std::size_t n = k.size();
  if (n < 3) return false;
  double winding = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::Vector2d a = k[(i + 1) % n] - k[i];
    Eigen::Vector2d b = k[(i + 2) % n] - k[(i + 1) % n];
    double cross = a[0] * b[1] - a[1] * b[0];
    double dot = a.dot(b);
    if (cross < -tol * a.norm() * b.norm()) return false;
    winding += std::atan2(cross, dot);
  }
  return std::abs(winding - 2.0 * std::numbers::pi) < 1e-6;
}

namespace {

struct Corners {
  std::vector<Vec3> start, end;
  std::vector<bool> hyperideal;  // per junction
  std::vector<double> junction_d;
};

}  // namespace

static ProperReport analyze(const HyperidealPolygonSpec& spec, double tol, Corners* out) {
  const auto& nl = spec.normals;
  const std::size_t n = nl.size();
  ProperReport rep;
  if (n < 3) return {ProperStatus::Unbounded, -1, "fewer than three support lines"};
  Corners c;
  c.start.resize(n);
  c.end.resize(n);
  c.hyperideal.resize(n);
  c.junction_d.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1) % n;
    double d = -eta3(nl[i], nl[j]);
    c.junction_d[i] = d;
    if (approx_equal(std::abs(d), 1.0, tol))
      return {ProperStatus::IdealVertex, static_cast<int>(i), fmt_index("lines meet at infinity at junction", i)};
    if (d < -1.0)
      return {ProperStatus::NestedLines, static_cast<int>(i), fmt_index("one half-plane contains the other at junction", i)};
    if (d > 1.0) {
      auto seg = common_perpendicular(nl[i], nl[j], tol);
      c.end[i] = seg.start;
      c.start[j] = seg.end;
      c.hyperideal[i] = true;
    } else {
      Vec3 x = line_intersection(nl[i], nl[j], tol);
      c.end[i] = x;
      c.start[j] = x;
      c.hyperideal[i] = false;
    }
  }
  // Condition (1): every hyperideal vertex lies in the region.
  for (std::size_t i = 0; i < n; ++i) {
    if (!c.hyperideal[i]) continue;
    for (const Vec3* foot : {&c.end[i], &c.start[(i + 1) % n]}) {
      for (std::size_t k = 0; k < n; ++k) {
        if (eta3(nl[k], *foot) < -tol)
          return {ProperStatus::VertexOutside, static_cast<int>(i),
                  fmt_index("hyperideal vertex at junction", i) + " crosses " + fmt_index("line", k)};
      }
    }
  }
  // Condition (2): each line carries a segment traversed along its orientation.
  for (std::size_t i = 0; i < n; ++i) {
    if (signed_sinh_along(nl[i], c.start[i], c.end[i]) <= tol)
      return {ProperStatus::Unbounded, static_cast<int>(i), fmt_index("no positive black segment on line", i)};
  }
  std::vector<Vec3> ring;
  for (std::size_t i = 0; i < n; ++i) {
    ring.push_back(c.start[i]);
    ring.push_back(c.end[i]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t r = 0; r < ring.size(); ++r) {
      if (eta3(nl[k], ring[r]) < -tol)
        return {ProperStatus::NotConvex, static_cast<int>(k), fmt_index("a corner lies right of line", k)};
    }
  }
  if (!is_convex_polygon(ring, tol)) return {ProperStatus::NotConvex, -1, "truncated boundary is not a convex polygon"};
  if (out) *out = std::move(c);
  return rep;
}

ProperReport is_proper_hyperideal(const HyperidealPolygonSpec& spec, double tol) { return analyze(spec, tol, nullptr); }

GreenBlackPolygon greenblack_from_hyperideal(const HyperidealPolygonSpec& spec, double tol) {
  Corners c;
  ProperReport rep = analyze(spec, tol, &c);
  if (rep.status == ProperStatus::IdealVertex) throw Error(ErrorCode::IdealVertex, rep.detail);
  if (!rep.proper()) throw Error(ErrorCode::NotProper, std::string(proper_status_name(rep.status)) + ": " + rep.detail);
  const auto& nl = spec.normals;
  const std::size_t n = nl.size();
  GreenBlackPolygon p;
  auto push_vertex = [&](Color color, ComplexAngle angle, int source, const Vec3& at) {
    p.vertices.push_back(GBVertex{color, angle, source});
    p.positions.push_back(at);
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t prev = (i + n - 1) % n;
    std::size_t next = (i + 1) % n;
    if (c.hyperideal[prev]) {
      double a = angle_at(c.start[i], c.end[prev], c.end[i]);
      push_vertex(Color::Black, ComplexAngle::real(a), static_cast<int>(i), c.start[i]);
    } else {
      push_vertex(Color::Green, complex_angle(nl[prev], nl[i]), static_cast<int>(prev), c.start[i]);
    }
    p.edges.push_back(GBEdge{Color::Black, hyp_distance(c.start[i], c.end[i]), static_cast<int>(i)});
    if (c.hyperideal[i]) {
      double a = angle_at(c.end[i], c.start[i], c.start[next]);
      push_vertex(Color::Black, ComplexAngle::real(a), static_cast<int>(i), c.end[i]);
      p.edges.push_back(GBEdge{Color::Green, hyp_distance(c.end[i], c.start[next]), static_cast<int>(i)});
    }
  }
  return p;
}

std::vector<GBViolation> validate_greenblack(const GreenBlackPolygon& p, double tol) {
  std::vector<GBViolation> out;
  const std::size_t n = p.vertices.size();
  if (n < 3 || p.edges.size() != n) {
    out.push_back({"shape", -1, "need n >= 3 vertices and as many edges"});
    return out;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto& e = p.edges[k];
    const auto& before = p.edges[(k + n - 1) % n];
    const auto& after = p.edges[(k + 1) % n];
    int ik = static_cast<int>(k);
    if (e.color == Color::Green && (before.color == Color::Green || after.color == Color::Green))
      out.push_back({"rule1", ik, fmt_index("green edge", k) + " has a green neighbour"});
    if (!(e.length > tol)) out.push_back({"length", ik, fmt_index("edge", k) + " has nonpositive length"});

    const auto& v = p.vertices[k];
    bool touches_green = before.color == Color::Green || e.color == Color::Green;
    Color expect = touches_green ? Color::Black : Color::Green;
    if (v.color != expect) out.push_back({"rule2", ik, fmt_index("vertex", k) + " should be " + std::string(color_name(expect))});
    if (v.angle.branch != ComplexAngle::Branch::Real) {
      out.push_back({"angle", ik, fmt_index("vertex", k) + " angle is not real"});
    } else if (v.color == Color::Black) {
      if (std::abs(v.angle.value - kRight) > tol) out.push_back({"rule3", ik, fmt_index("black vertex", k) + " is not a right angle"});
    } else if (!(v.angle.value > tol && v.angle.value <= std::numbers::pi + tol)) {
      out.push_back({"angle", ik, fmt_index("green vertex", k) + " angle outside (0, pi]"});
    }
  }
  if (!p.positions.empty()) {
    if (p.positions.size() != n) {
      out.push_back({"shape", -1, "positions do not match vertices"});
      return out;
    }
    if (!is_convex_polygon(p.positions, tol)) out.push_back({"convexity", -1, "polygon is not convex"});
    for (std::size_t k = 0; k < n; ++k) {
      double len = hyp_distance(p.positions[k], p.positions[(k + 1) % n]);
      if (!same_value(len, p.edges[k].length, 1e3 * tol))
        out.push_back({"geometry", static_cast<int>(k), fmt_index("edge", k) + " length disagrees with positions"});
    }
  }
  return out;
}

GreenBlackPolygon polygon_from_points(const std::vector<Vec3>& points, const std::vector<Color>& edge_colors) {
  const std::size_t n = points.size();
  if (edge_colors.size() != n) throw Error(ErrorCode::HypothesisViolated, "one edge color per vertex is required");
  GreenBlackPolygon p;
  p.positions = points;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3& prev = points[(k + n - 1) % n];
    const Vec3& next = points[(k + 1) % n];
    bool touches_green = edge_colors[(k + n - 1) % n] == Color::Green || edge_colors[k] == Color::Green;
    p.vertices.push_back(GBVertex{touches_green ? Color::Black : Color::Green,
                                  ComplexAngle::real(angle_at(points[k], next, prev)), static_cast<int>(k)});
    p.edges.push_back(GBEdge{edge_colors[k], hyp_distance(points[k], next), static_cast<int>(k)});
  }
  return p;
}

GreenBlackChain arm_chain_build(const ChainSpec& spec, double tol) {
  const std::size_t m = spec.edge_colors.size();
  if (m == 0 || spec.lengths.size() != m || spec.angles.size() + 1 != m)
    throw Error(ErrorCode::HypothesisViolated, "chain needs one length per edge and one angle per inner vertex");
  if (spec.edge_colors.front() != Color::Black || spec.edge_colors.back() != Color::Black)
    throw Error(ErrorCode::HypothesisViolated, "chain must begin and end with black edges");
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (spec.edge_colors[k] == Color::Green && spec.edge_colors[k + 1] == Color::Green)
      throw Error(ErrorCode::HypothesisViolated, "adjacent green edges");
  }
  for (double l : spec.lengths)
    if (!(l > 0.0)) throw Error(ErrorCode::HypothesisViolated, "edge lengths must be positive");
  for (double a : spec.angles)
    if (!(a > 0.0 && a < std::numbers::pi)) throw Error(ErrorCode::HypothesisViolated, "angles must lie in (0, pi)");

  GreenBlackChain c;
  Vec3 p = origin_point();
  Vec3 t(1.0, 0.0, 0.0);
  c.positions.push_back(p);
  for (std::size_t k = 0; k < m; ++k) {
    double l = spec.lengths[k];
    Vec3 q = std::cosh(l) * p + std::sinh(l) * t;
    Vec3 tq = std::sinh(l) * p + std::cosh(l) * t;
    p = q;
    t = tq;
    c.positions.push_back(p);
    if (k + 1 < m) {
      double turn = std::numbers::pi - spec.angles[k];
      t = std::cos(turn) * t + std::sin(turn) * rotate_left(p, t);
    }
  }
  for (std::size_t v = 0; v <= m; ++v) {
    bool touches_green = (v > 0 && spec.edge_colors[v - 1] == Color::Green) || (v < m && spec.edge_colors[v] == Color::Green);
    ComplexAngle a = (v == 0 || v == m) ? ComplexAngle::real(0.0) : ComplexAngle::real(spec.angles[v - 1]);
    c.vertices.push_back(GBVertex{touches_green ? Color::Black : Color::Green, a, static_cast<int>(v)});
  }
  for (std::size_t k = 0; k < m; ++k) c.edges.push_back(GBEdge{spec.edge_colors[k], spec.lengths[k], static_cast<int>(k)});
  if (!is_convex_polygon(c.positions, tol)) throw Error(ErrorCode::NonConvex, "closing the chain gives a non-convex polygon");
  return c;
}

GreenBlackChain arm_chain_build(const std::vector<double>& black_lengths, const std::vector<double>& green_lengths,
                                const std::vector<double>& green_vertex_angles,
                                const std::vector<Color>& color_pattern, double tol) {
  ChainSpec spec;
  spec.edge_colors = color_pattern;
  std::size_t nb = 0, ng = 0, na = 0;
  for (Color col : color_pattern) {
    const auto& src = col == Color::Black ? black_lengths : green_lengths;
    std::size_t& idx = col == Color::Black ? nb : ng;
    if (idx >= src.size()) throw Error(ErrorCode::HypothesisViolated, "too few edge lengths for the color pattern");
    spec.lengths.push_back(src[idx++]);
  }
  for (std::size_t v = 1; v < color_pattern.size(); ++v) {
    if (color_pattern[v - 1] == Color::Green || color_pattern[v] == Color::Green) {
      spec.angles.push_back(kRight);
    } else {
      if (na >= green_vertex_angles.size()) throw Error(ErrorCode::HypothesisViolated, "too few green vertex angles");
      spec.angles.push_back(green_vertex_angles[na++]);
    }
  }
  if (nb != black_lengths.size() || ng != green_lengths.size() || na != green_vertex_angles.size())
    throw Error(ErrorCode::HypothesisViolated, "unused chain data");
  return arm_chain_build(spec, tol);
}

ChainSpec chain_spec(const GreenBlackChain& c) {
  ChainSpec s;
  for (const auto& e : c.edges) {
    s.edge_colors.push_back(e.color);
    s.lengths.push_back(e.length);
  }
  for (std::size_t v = 1; v + 1 < c.vertices.size(); ++v) s.angles.push_back(c.vertices[v].angle.value);
  return s;
}

GreenBlackChain subchain(const GreenBlackPolygon& p, std::size_t first, std::size_t count) {
  const std::size_t n = p.size();
  if (count < 2 || count > n + 1 || p.positions.size() != n)
    throw Error(ErrorCode::HypothesisViolated, "subchain needs 2..n+1 vertices of a positioned polygon");
  GreenBlackChain c;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t k = (first + i) % n;
    GBVertex v = p.vertices[k];
    if (i == 0 || i + 1 == count) v.angle = ComplexAngle::real(0.0);
    c.vertices.push_back(v);
    c.positions.push_back(p.positions[k]);
    if (i + 1 < count) c.edges.push_back(p.edges[k]);
  }
  return c;
}

ArmLemmaResult arm_lemma_check(const GreenBlackChain& c, const GreenBlackChain& cp, double tol) {
  const std::size_t n = c.size();
  if (n != cp.size() || c.edges.size() + 1 != n || cp.edges.size() + 1 != n || n < 2)
    throw Error(ErrorCode::IncompatibleChains, "chains differ in length");
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (c.edges[k].color != cp.edges[k].color) throw Error(ErrorCode::IncompatibleChains, fmt_index("color differs at edge", k));
  }
  if (c.edges.front().color != Color::Black || c.edges.back().color != Color::Black)
    throw Error(ErrorCode::IncompatibleChains, "arm chains begin and end with black edges");
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double a = c.edges[k].length, b = cp.edges[k].length;
    if (c.edges[k].color == Color::Black) {
      if (!same_value(a, b, tol)) throw Error(ErrorCode::HypothesisViolated, fmt_index("black edge lengths differ at", k));
    } else {
      if (a > b + tol * (1.0 + b)) throw Error(ErrorCode::HypothesisViolated, fmt_index("condition (1) fails at edge", k));
      if (k >= 1) {
        for (const auto* ch : {&c, &cp}) {
          if (std::abs(ch->vertices[k].angle.value - kRight) > tol)
            throw Error(ErrorCode::HypothesisViolated, fmt_index("condition (3) fails at vertex", k));
        }
      }
    }
  }
  for (std::size_t v = 1; v + 1 < n; ++v) {
    double a = c.vertices[v].angle.value, b = cp.vertices[v].angle.value;
    bool green = c.edges[v - 1].color == Color::Black && c.edges[v].color == Color::Black;
    if (green ? a > b + tol : std::abs(a - b) > tol)
      throw Error(ErrorCode::HypothesisViolated, fmt_index("condition (2) fails at vertex", v));
  }
  for (const auto* ch : {&c, &cp}) {
    if (ch->positions.size() != n || !is_convex_polygon(ch->positions, tol))
      throw Error(ErrorCode::HypothesisViolated, "chain does not close to a convex polygon");
  }
  ArmLemmaResult r;
  r.distance = c.free_distance();
  r.distance_prime = cp.free_distance();
  r.equality = std::abs(r.distance - r.distance_prime) <= kEqualityTol;
  r.consistent = r.distance <= r.distance_prime + tol * (1.0 + r.distance_prime);
  if (!r.consistent) r.detail = "free-vertex distance decreased";
  return r;
}

int cyclic_sign_changes(const std::vector<Label>& labels) {
  std::vector<Label> seq;
  for (Label l : labels)
    if (l != Label::None) seq.push_back(l);
  int changes = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (seq[i] != seq[(i + 1) % seq.size()]) ++changes;
  return changes;
}

FourVertexResult four_vertex_labels(const GreenBlackPolygon& p, const GreenBlackPolygon& q, double tol) {
  const std::size_t n = p.size();
  if (n != q.size() || p.edges.size() != n || q.edges.size() != n)
    throw Error(ErrorCode::IncompatibleChains, "polygons differ in size");
  for (std::size_t k = 0; k < n; ++k) {
    if (p.edges[k].color != q.edges[k].color || p.vertices[k].color != q.vertices[k].color)
      throw Error(ErrorCode::IncompatibleChains, fmt_index("color pattern differs at element", k));
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (p.edges[k].color == Color::Black && !same_value(p.edges[k].length, q.edges[k].length, tol))
      throw Error(ErrorCode::NotBlackEdgeCongruent, fmt_index("black edge", k));
  }
  auto compare = [tol](double a, double b) {
    if (same_value(a, b, tol)) return Label::None;
    return a > b ? Label::Plus : Label::Minus;
  };
  FourVertexResult r;
  r.labels.assign(2 * n, Label::None);
  for (std::size_t k = 0; k < n; ++k) {
    if (p.vertices[k].color == Color::Green)
      r.labels[2 * k] = compare(theta_coordinate(p.vertices[k].angle), theta_coordinate(q.vertices[k].angle));
    if (p.edges[k].color == Color::Green) r.labels[2 * k + 1] = compare(p.edges[k].length, q.edges[k].length);
  }
  r.sign_changes = cyclic_sign_changes(r.labels);
  return r;
}

}  // namespace circpoly
