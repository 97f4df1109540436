#include "circpoly/hyperideal3d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "circpoly/error.hpp"
#include "circpoly/random.hpp"

namespace circpoly {

namespace {

using V3 = Eigen::Vector3d;

std::vector<std::string> index_names(std::size_t n, const std::string& prefix = "") {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

V3 centroid(const std::vector<V3>& pts) {
  V3 c = V3::Zero();
  for (const auto& p : pts) c += p;
  return c / static_cast<double>(pts.size());
}

// Reverses faces whose Newell normal points towards the solid's centroid.
ConvexPolyhedron3 orient_outward(std::vector<V3> pts, std::vector<std::vector<int>> faces) {
  ConvexPolyhedron3 p{std::move(pts), std::move(faces)};
  V3 c = centroid(p.vertices);
  for (int f = 0; f < static_cast<int>(p.faces.size()); ++f) {
    FacePlane pl = face_plane(p, f);
    if (pl.offset - pl.normal.dot(c) < 0) std::reverse(p.faces[f].begin(), p.faces[f].end());
  }
  return p;
}

double segment_distance(const V3& a, const V3& b) {
  V3 d = b - a;
  double t = std::clamp(-a.dot(d) / d.squaredNorm(), 0.0, 1.0);
  return (a + t * d).norm();
}

// Classification gate used for generated fixtures: at least `margin` inside
// every window.
bool comfortably_hyperideal(const ConvexPolyhedron3& p, double margin) {
  HyperidealClass cls = classify_strictly_hyperideal(p, margin);
  return cls.strictly_hyperideal && cls.non_unitary;
}

constexpr double kFixtureMargin = 1e-3;

}  // namespace

AbstractPolyhedron ConvexPolyhedron3::combinatorics() const { return AbstractPolyhedron(index_names(vertices.size()), faces); }

FacePlane face_plane(const ConvexPolyhedron3& p, int f) {
  const auto& face = p.faces[static_cast<std::size_t>(f)];
  V3 n = V3::Zero(), c = V3::Zero();
  for (std::size_t i = 0; i < face.size(); ++i) {
    const V3& a = p.vertices[face[i]];
    const V3& b = p.vertices[face[(i + 1) % face.size()]];
    n += V3((a.y() - b.y()) * (a.z() + b.z()), (a.z() - b.z()) * (a.x() + b.x()), (a.x() - b.x()) * (a.y() + b.y()));
    c += a;
  }
  c /= static_cast<double>(face.size());
  double len = n.norm();
  if (len == 0.0) throw Error(ErrorCode::NotConvex, "face " + std::to_string(f) + " has zero area");
  n /= len;
  return {n, n.dot(c)};
}

void check_convex(const ConvexPolyhedron3& p, double tol) {
  if (p.vertices.size() < 4) throw Error(ErrorCode::NotConvex, "fewer than four vertices");
  for (const auto& face : p.faces)
    for (int v : face)
      if (v < 0 || v >= static_cast<int>(p.vertices.size()))
        throw Error(ErrorCode::NotConvex, "face refers to vertex " + std::to_string(v) + " out of range");
  auto diags = validate_abstract(p.combinatorics());
  if (!diags.empty()) throw Error(ErrorCode::NotConvex, "combinatorics: " + diags.front().check + ": " + diags.front().detail);
  double scale = 0.0;
  for (const auto& v : p.vertices) scale = std::max(scale, v.norm());
  const double eps = tol * (1.0 + scale);
  V3 c = centroid(p.vertices);
  for (int f = 0; f < static_cast<int>(p.faces.size()); ++f) {
    FacePlane pl = face_plane(p, f);
    for (int v : p.faces[f])
      if (std::abs(pl.normal.dot(p.vertices[v]) - pl.offset) > eps)
        throw Error(ErrorCode::NotConvex, "face " + std::to_string(f) + " is not planar");
    if (pl.normal.dot(c) >= pl.offset)
      throw Error(ErrorCode::NotConvex, "face " + std::to_string(f) + " is not oriented outward");
    for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v)
      if (pl.normal.dot(p.vertices[v]) > pl.offset + eps)
        throw Error(ErrorCode::NotConvex,
                    "vertex " + std::to_string(v) + " lies beyond the plane of face " + std::to_string(f));
  }
}

std::string_view edge_relation_name(EdgeRelation r) {
  switch (r) {
    case EdgeRelation::MeetsOpenBall: return "meets_open_ball";
    case EdgeRelation::Tangent: return "tangent";
    case EdgeRelation::MissesClosedBall: return "misses_closed_ball";
  }
  return "unknown";
}

HyperidealClass classify_strictly_hyperideal(const ConvexPolyhedron3& p, double tol) {
  check_convex(p);
  HyperidealClass cls;
  bool vertices_ok = true, faces_ok = true;
  for (std::size_t v = 0; v < p.vertices.size(); ++v) {
    bool out = p.vertices[v].norm() > 1.0 + tol;
    cls.vertex_outside.push_back(out);
    if (!out && vertices_ok) {
      vertices_ok = false;
      cls.detail = "vertex " + std::to_string(v) + " lies in the closed ball";
    }
  }
  for (int f = 0; f < static_cast<int>(p.faces.size()); ++f) {
    bool meets = face_plane(p, f).offset < 1.0 - tol;
    cls.face_meets_ball.push_back(meets);
    if (!meets && faces_ok) {
      faces_ok = false;
      if (cls.detail.empty()) cls.detail = "face " + std::to_string(f) + " misses the open ball";
    }
  }
  cls.non_unitary = true;
  cls.all_edges_miss = cls.all_edges_meet = true;
  const AbstractPolyhedron comb = p.combinatorics();
  for (const Edge& e : comb.edges()) {
    double d = segment_distance(p.vertices[e.u], p.vertices[e.v]);
    cls.edge_distance.push_back(d);
    EdgeRelation r = d < 1.0 - tol ? EdgeRelation::MeetsOpenBall
                     : d > 1.0 + tol ? EdgeRelation::MissesClosedBall
                                     : EdgeRelation::Tangent;
    cls.edges.push_back(r);
    if (r == EdgeRelation::Tangent) {
      if (cls.non_unitary && cls.detail.empty())
        cls.detail = "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is tangent to the sphere";
      cls.non_unitary = false;
    }
    if (r != EdgeRelation::MissesClosedBall) cls.all_edges_miss = false;
    if (r != EdgeRelation::MeetsOpenBall) cls.all_edges_meet = false;
  }
  cls.strictly_hyperideal = vertices_ok && faces_ok;
  return cls;
}

OrientedCircle support_circle(const Eigen::Vector3d& normal, double offset) {
  if (!(std::abs(offset) < 1.0))
    throw Error(ErrorCode::PlaneMissesBall, "plane offset " + std::to_string(offset) + " is outside (-1, 1)");
  return OrientedCircle::from_cap({normal.normalized(), std::acos(offset)});
}

OrientedCircle tangency_circle(const Eigen::Vector3d& v, double tol) {
  double r = v.norm();
  if (r <= 1.0 + tol) throw Error(ErrorCode::VertexInsideBall, "vertex norm " + std::to_string(r));
  return OrientedCircle::from_cap({v / r, std::acos(1.0 / r)});
}

DualResult dual_cpolyhedron(const ConvexPolyhedron3& p, double tol) {
  DualResult out;
  out.cls = classify_strictly_hyperideal(p, tol);
  if (!out.cls.strictly_hyperideal) throw Error(ErrorCode::ValidationFailed, "not strictly hyperideal: " + out.cls.detail);
  if (!out.cls.non_unitary) throw Error(ErrorCode::ValidationFailed, "unitary: " + out.cls.detail);
  AbstractPolyhedron primal = p.combinatorics();
  std::vector<std::vector<int>> dual_faces;
  for (int v = 0; v < static_cast<int>(primal.vertex_count()); ++v) dual_faces.push_back(primal.faces_around(v));
  AbstractPolyhedron dual(index_names(p.faces.size(), "F"), std::move(dual_faces));
  std::vector<OrientedCircle> circles;
  for (int f = 0; f < static_cast<int>(p.faces.size()); ++f) {
    FacePlane pl = face_plane(p, f);
    circles.push_back(support_circle(pl.normal, pl.offset));
  }
  out.cp = build_cpolyhedron(dual, circles, tol);
  // Normalization moves every circle by the antipodal map; the tangency
  // circles are compared after the same move.
  bool flipped = out.cp.convex() && out.cp.orientation == OrientationCase::CaseII;
  if (flipped) out.cp = normalize_orientation(out.cp);
  for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v) {
    OrientedCircle t = tangency_circle(p.vertices[v], tol);
    if (flipped) t = antipodal_reversed(t);
    const Vec4& o = out.cp.ortho[v].lorentz();
    double gap = std::min((o - t.lorentz()).norm(), (o + t.lorentz()).norm());
    out.tangency_residual = std::max(out.tangency_residual, gap);
  }
  return out;
}

std::string_view fixture_kind_name(FixtureKind k) {
  switch (k) {
    case FixtureKind::Cube: return "cube";
    case FixtureKind::Octahedron: return "octahedron";
    case FixtureKind::Dodecahedron: return "dodecahedron";
    case FixtureKind::Icosahedron: return "icosahedron";
    case FixtureKind::RandomHull: return "random_hull";
  }
  return "unknown";
}

FixtureKind parse_fixture_kind(std::string_view name) {
  for (auto k : {FixtureKind::Cube, FixtureKind::Octahedron, FixtureKind::Dodecahedron, FixtureKind::Icosahedron,
                 FixtureKind::RandomHull})
    if (fixture_kind_name(k) == name) return k;
  throw Error(ErrorCode::ParseError, "unknown fixture kind '" + std::string(name) + "'");
}

ConvexPolyhedron3 cube_fixture(double a) {
  std::vector<V3> pts;
  for (int i = 0; i < 8; ++i) pts.emplace_back(i & 4 ? a : -a, i & 2 ? a : -a, i & 1 ? a : -a);
  return orient_outward(pts, {{4, 6, 7, 5}, {0, 1, 3, 2}, {2, 3, 7, 6}, {0, 4, 5, 1}, {1, 5, 7, 3}, {0, 2, 6, 4}});
}

ConvexPolyhedron3 octahedron_fixture(double s) {
  return convex_hull({{s, 0, 0}, {-s, 0, 0}, {0, s, 0}, {0, -s, 0}, {0, 0, s}, {0, 0, -s}});
}

ConvexPolyhedron3 icosahedron_fixture(double k) {
  const double phi = std::numbers::phi;
  std::vector<V3> pts;
  for (double s1 : {-1.0, 1.0})
    for (double s2 : {-1.0, 1.0}) {
      pts.emplace_back(0, s1 * k, s2 * phi * k);
      pts.emplace_back(s1 * k, s2 * phi * k, 0);
      pts.emplace_back(s2 * phi * k, 0, s1 * k);
    }
  return convex_hull(pts);
}

ConvexPolyhedron3 dodecahedron_fixture(double k) {
  // Vertices sit over the face centres of the icosahedron, at norm k sqrt 3,
  // which reproduces the golden-ratio coordinates scaled by k.
  ConvexPolyhedron3 ico = icosahedron_fixture(1.0);
  AbstractPolyhedron comb = ico.combinatorics();
  std::vector<V3> pts;
  for (const auto& face : ico.faces) {
    V3 c = V3::Zero();
    for (int v : face) c += ico.vertices[v];
    pts.push_back(c.normalized() * k * std::sqrt(3.0));
  }
  std::vector<std::vector<int>> faces;
  for (int v = 0; v < static_cast<int>(ico.vertices.size()); ++v) faces.push_back(comb.faces_around(v));
  return orient_outward(pts, faces);
}

ConvexPolyhedron3 convex_hull(const std::vector<Eigen::Vector3d>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 4) throw Error(ErrorCode::NotConvex, "hull needs at least four points");
  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, p.norm());
  const double eps = 1e-10 * (1.0 + scale) * (1.0 + scale);
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        V3 nrm = (points[j] - points[i]).cross(points[k] - points[i]);
        int above = 0, below = 0, on = 0;
        for (int m = 0; m < n; ++m) {
          if (m == i || m == j || m == k) continue;
          double s = nrm.dot(points[m] - points[i]);
          s > eps ? ++above : s < -eps ? ++below : ++on;
        }
        if (above > 0 && below > 0) continue;
        if (on > 0) throw Error(ErrorCode::NotConvex, "four hull points are coplanar");
        faces.push_back(above == 0 ? std::vector<int>{i, j, k} : std::vector<int>{i, k, j});
      }
  std::vector<int> remap(n, -1);
  std::vector<V3> kept;
  for (auto& f : faces)
    for (int& v : f) {
      if (remap[v] < 0) {
        remap[v] = static_cast<int>(kept.size());
        kept.push_back(points[v]);
      }
      v = remap[v];
    }
  return ConvexPolyhedron3{std::move(kept), std::move(faces)};
}

// Intersection of half-spaces {x . n_i <= d_i}, 0 < d_i < 1, built through
// the polar points n_i / d_i: each triangle of their hull is a vertex of the
// intersection, each polar hull vertex a face.
ConvexPolyhedron3 halfspace_intersection(const std::vector<V3>& normals, const std::vector<double>& offsets) {
  std::vector<V3> polar;
  for (std::size_t i = 0; i < normals.size(); ++i) polar.push_back(normals[i] / offsets[i]);
  ConvexPolyhedron3 dual = convex_hull(polar);
  for (int f = 0; f < static_cast<int>(dual.faces.size()); ++f)
    if (face_plane(dual, f).offset <= 1e-9) throw Error(ErrorCode::NotConvex, "half-spaces do not bound a polyhedron");
  std::vector<V3> pts;
  for (const auto& tri : dual.faces) {
    Eigen::Matrix3d m;
    Eigen::Vector3d rhs;
    for (int r = 0; r < 3; ++r) {
      const V3& q = dual.vertices[tri[r]];
      m.row(r) = q.transpose();
      rhs[r] = 1.0;
    }
    pts.push_back(m.fullPivLu().solve(rhs));
  }
  AbstractPolyhedron comb = dual.combinatorics();
  std::vector<std::vector<int>> faces;
  for (int v = 0; v < static_cast<int>(dual.vertices.size()); ++v) faces.push_back(comb.faces_around(v));
  return orient_outward(std::move(pts), std::move(faces));
}

ConvexPolyhedron3 random_hull(std::uint64_t seed, int planes, int budget) {
  if (planes < 4) throw Error(ErrorCode::ParamsOutOfRange, "random hulls need at least 4 planes");
  Rng rng(seed);
  for (int attempt = 0; attempt < budget; ++attempt) {
    std::vector<V3> normals;
    std::vector<double> offsets;
    // Jittered spiral directions keep the planes spread so that the
    // intersection is bounded and its vertices clear the ball.
    for (int i = 0; i < planes; ++i) {
      double z = 1.0 - 2.0 * (i + 0.5) / planes, r = std::sqrt(1.0 - z * z);
      double phi = i * std::numbers::pi * (3.0 - std::sqrt(5.0));
      V3 dir(r * std::cos(phi), r * std::sin(phi), z);
      normals.push_back((dir + 0.25 * rng.unit_vector()).normalized());
      offsets.push_back(rng.uniform(0.7, 0.97));
    }
    try {
      ConvexPolyhedron3 hull = halfspace_intersection(normals, offsets);
      if (!comfortably_hyperideal(hull, kFixtureMargin)) continue;
      DualResult dual = dual_cpolyhedron(hull);
      if (!dual.cp.convex() || !dual.cp.consistently_oriented()) continue;
      bool proper = true;
      for (int v = 0; v < static_cast<int>(dual.cp.poly.vertex_count()) && proper; ++v) proper = c_link(dual.cp, v).ok();
      if (proper) return hull;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::RejectionBudgetExceeded, "no admissible random hull in " + std::to_string(budget) + " draws");
}

ConvexPolyhedron3 generate_fixture(FixtureKind kind, double param, std::uint64_t seed) {
  ConvexPolyhedron3 p;
  switch (kind) {
    case FixtureKind::Cube: p = cube_fixture(param); break;
    case FixtureKind::Octahedron: p = octahedron_fixture(param); break;
    case FixtureKind::Dodecahedron: p = dodecahedron_fixture(param); break;
    case FixtureKind::Icosahedron: p = icosahedron_fixture(param); break;
    case FixtureKind::RandomHull: return random_hull(seed, static_cast<int>(param));
  }
  if (!(param > 0.0) || !comfortably_hyperideal(p, kFixtureMargin))
    throw Error(ErrorCode::ParamsOutOfRange, std::string(fixture_kind_name(kind)) + " parameter " +
                                                 std::to_string(param) + " is outside the strictly hyperideal window");
  return p;
}

}  // namespace circpoly
