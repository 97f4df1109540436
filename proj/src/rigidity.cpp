#include "circpoly/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "circpoly/error.hpp"

namespace circpoly {

namespace {

// Scale-aware gap between two circles' Lorentz vectors.
double circle_gap(const OrientedCircle& x, const OrientedCircle& y) {
  return (x.lorentz() - y.lorentz()).cwiseAbs().maxCoeff() / (1.0 + y.lorentz().cwiseAbs().maxCoeff());
}

bool same_combinatorics(const AbstractPolyhedron& p, const AbstractPolyhedron& q) {
  return p.names() == q.names() && p.faces() == q.faces();
}

bool same_unoriented(const OrientedCircle& x, const OrientedCircle& y, double tol) {
  return (x.lorentz() - y.lorentz()).norm() <= tol || (x.lorentz() + y.lorentz()).norm() <= tol;
}

// Ends of C_u's line in the disk model of O, start first.
std::array<Vec3, 2> line_ends(const OrientedCircle& o, const OrientedCircle& cu) {
  auto [s, e] = ideal_endpoints(OrientedLine{DiskModel(o), cu});
  return {s, e};
}

double min_separation(const std::array<Vec3, 4>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) best = std::min(best, (pts[i] - pts[j]).norm());
  return best;
}

// Faces ordered by their sorted vertex names; the first one seeds the map.
int lexicographic_first_face(const AbstractPolyhedron& p) {
  auto key = [&](int f) {
    std::vector<std::string> names;
    for (int v : p.face(f)) names.push_back(p.name(v));
    std::sort(names.begin(), names.end(), name_less);
    return names;
  };
  int best = 0;
  auto best_key = key(0);
  for (int f = 1; f < static_cast<int>(p.face_count()); ++f) {
    auto k = key(f);
    if (std::lexicographical_compare(k.begin(), k.end(), best_key.begin(), best_key.end(), name_less)) {
      best = f;
      best_key = std::move(k);
    }
  }
  return best;
}

constexpr double kMinAnchorSeparation = 1e-6;

}  // namespace

FaceCongruence face_congruence(const CPolyhedron& a, const CPolyhedron& b, int f, double tol) {
  const auto& face = a.poly.face(f);
  const std::size_t n = face.size();
  double best_sep = -1.0;
  std::array<Vec3, 4> src{}, dst{};
  FaceCongruence out;
  for (std::size_t i = 0; i < n; ++i) {
    int u = face[i], v = face[(i + 1) % n];
    auto su = line_ends(a.ortho[f], a.circles[u]), sv = line_ends(a.ortho[f], a.circles[v]);
    auto du = line_ends(b.ortho[f], b.circles[u]), dv = line_ends(b.ortho[f], b.circles[v]);
    std::array<Vec3, 4> s{su[0], su[1], sv[0], sv[1]}, d{du[0], du[1], dv[0], dv[1]};
    double sep = std::min(min_separation(s), min_separation(d));
    if (sep > best_sep) {
      best_sep = sep;
      src = s;
      dst = d;
      out.anchor_u = u;
      out.anchor_v = v;
    }
  }
  if (best_sep < kMinAnchorSeparation)
    throw Error(ErrorCode::DegenerateFace, "face " + std::to_string(f) + " has no well-separated anchor points");
  out.map = mobius_from_three_points({stereographic(src[0]), stereographic(src[1]), stereographic(src[2])},
                                     {stereographic(dst[0]), stereographic(dst[1]), stereographic(dst[2])});
  out.residual = (out.map.apply_sphere(src[3]) - dst[3]).norm();
  out.residual = std::max(out.residual, circle_gap(moebius_apply_circle(out.map, a.ortho[f]), b.ortho[f]));
  for (int u : face) out.residual = std::max(out.residual, circle_gap(moebius_apply_circle(out.map, a.circles[u]), b.circles[u]));
  out.ok = out.residual <= tol;
  if (!out.ok) out.detail = "face " + std::to_string(f) + " circle residual " + std::to_string(out.residual);
  return out;
}

char edge_sign_char(EdgeSign s) {
  switch (s) {
    case EdgeSign::None: return '0';
    case EdgeSign::Plus: return '+';
    case EdgeSign::Minus: return '-';
    case EdgeSign::Indeterminate: return '?';
  }
  return '?';
}

std::size_t EdgeSignLabeling::labeled() const {
  return static_cast<std::size_t>(
      std::count_if(signs.begin(), signs.end(), [](EdgeSign s) { return s == EdgeSign::Plus || s == EdgeSign::Minus; }));
}

EdgeSignLabeling edge_labels(const CPolyhedron& a, const CPolyhedron& b, double tol) {
  if (!same_combinatorics(a.poly, b.poly)) throw Error(ErrorCode::ValidationMissing, "different combinatorics");
  EdgeSignLabeling out;
  for (const Edge& e : a.poly.edges()) {
    double d = inv_dist(a.ortho[e.left], a.ortho[e.right]);
    double dp = inv_dist(b.ortho[e.left], b.ortho[e.right]);
    bool tangent = approx_equal(std::abs(d), 1.0, tol) || approx_equal(std::abs(dp), 1.0, tol);
    bool mixed = std::abs(d) < 1.0 && dp < -1.0;
    EdgeSign s = EdgeSign::None;
    if (tangent) {
      s = EdgeSign::Indeterminate;
    } else if (!approx_equal(d, dp, tol)) {
      bool primed_meet = std::abs(dp) <= 1.0;
      bool plus = primed_meet ? d < dp : d > dp;
      s = plus ? EdgeSign::Plus : EdgeSign::Minus;
    }
    out.signs.push_back(s);
    out.mixed.push_back(mixed && s != EdgeSign::None);
  }
  return out;
}

int sign_changes_around(const std::vector<EdgeSign>& signs, const AbstractPolyhedron& p, int v) {
  std::vector<EdgeSign> ring;
  for (int w : p.neighbors_around(v)) {
    EdgeSign s = signs[static_cast<std::size_t>(p.edge_index(v, w))];
    if (s == EdgeSign::Plus || s == EdgeSign::Minus) ring.push_back(s);
  }
  int changes = 0;
  for (std::size_t i = 0; i < ring.size(); ++i)
    if (ring[i] != ring[(i + 1) % ring.size()]) ++changes;
  return changes;
}

int combinatorial_scan(const std::vector<EdgeSign>& signs, const AbstractPolyhedron& p) {
  auto labeled = [](EdgeSign s) { return s == EdgeSign::Plus || s == EdgeSign::Minus; };
  if (std::none_of(signs.begin(), signs.end(), labeled)) throw Error(ErrorCode::NoLabeledEdge, "no edge carries a sign");
  for (int v = 0; v < static_cast<int>(p.vertex_count()); ++v) {
    bool touched = false;
    for (int w : p.neighbors_around(v)) touched = touched || labeled(signs[static_cast<std::size_t>(p.edge_index(v, w))]);
    if (touched && sign_changes_around(signs, p, v) <= 2) return v;
  }
  throw Error(ErrorCode::LemmaViolated, "every labeled vertex has more than two sign changes");
}

std::string_view witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::None: return "none";
    case WitnessKind::FaceCongruence: return "face_congruence";
    case WitnessKind::DihedralMismatch: return "dihedral_mismatch";
    case WitnessKind::CirclePropagation: return "circle_propagation";
  }
  return "unknown";
}

HypothesisMargins hypothesis_margins(const CPolyhedron& cp) {
  HypothesisMargins m;
  m.non_unitary = std::numeric_limits<double>::infinity();
  for (const Edge& e : cp.poly.edges())
    m.non_unitary = std::min(m.non_unitary, std::abs(std::abs(inv_dist(cp.circles[e.u], cp.circles[e.v])) - 1.0));
  m.convexity = std::numeric_limits<double>::infinity();
  for (int f = 0; f < static_cast<int>(cp.poly.face_count()); ++f) {
    const auto& face = cp.poly.face(f);
    for (int u = 0; u < static_cast<int>(cp.circles.size()); ++u)
      if (std::find(face.begin(), face.end(), u) == face.end())
        m.convexity = std::min(m.convexity, inv_dist(cp.circles[u], cp.ortho[f]));
    double gate = cp.tol * static_cast<double>(face.size());
    double unused = 1.0 - cp.ortho_residual[f] / gate;
    m.face_planarity = f == 0 ? unused : std::min(m.face_planarity, unused);
  }
  m.weakest = "non_unitary";
  double worst = m.non_unitary;
  if (m.convexity < worst) worst = m.convexity, m.weakest = "convexity";
  if (m.face_planarity < worst) m.weakest = "face_planarity";
  return m;
}

CongruenceVerdict certify_congruence(const CPolyhedron& a, const CPolyhedron& b, double tol) {
  if (!same_combinatorics(a.poly, b.poly)) throw Error(ErrorCode::ValidationMissing, "different combinatorics");
  for (const CPolyhedron* side : {&a, &b}) {
    const char* which = side == &a ? "first" : "second";
    if (!side->convex()) throw Error(ErrorCode::ValidationMissing, std::string(which) + " side is not convex");
    if (!side->consistently_oriented())
      throw Error(ErrorCode::ValidationMissing, std::string(which) + " side is not consistently oriented");
    for (int v = 0; v < static_cast<int>(side->poly.vertex_count()); ++v)
      if (!c_link(*side, v).ok())
        throw Error(ErrorCode::ValidationMissing, std::string(which) + " side is improper at " + side->poly.name(v));
  }
  CongruenceVerdict out;
  const int nf = static_cast<int>(a.poly.face_count());
  out.faces.resize(static_cast<std::size_t>(nf));
#pragma omp parallel for schedule(static)
  for (int f = 0; f < nf; ++f) {
    try {
      out.faces[f] = face_congruence(a, b, f, tol);
    } catch (const Error& e) {
      out.faces[f].ok = false;
      out.faces[f].residual = std::numeric_limits<double>::infinity();
      out.faces[f].detail = e.what();
    }
  }
  out.seed_face = lexicographic_first_face(a.poly);
  out.labels = edge_labels(a, b);
  out.margins_a = hypothesis_margins(a);
  out.margins_b = hypothesis_margins(b);

  const FaceCongruence& seed = out.faces[out.seed_face];
  int worst_vertex = -1;
  if (std::isfinite(seed.residual)) {
    out.map = seed.map;
    for (int v = 0; v < static_cast<int>(a.circles.size()); ++v) {
      double gap = circle_gap(moebius_apply_circle(out.map, a.circles[v]), b.circles[v]);
      if (gap > out.residual) out.residual = gap, worst_vertex = v;
    }
  } else {
    out.residual = seed.residual;
  }
  out.congruent = out.residual <= tol;

  if (out.labels.labeled() > 0) {
    try {
      out.scan_vertex = combinatorial_scan(out.labels.signs, a.poly);
      out.sign_changes = sign_changes_around(out.labels.signs, a.poly, *out.scan_vertex);
    } catch (const Error& e) {
      out.witness.detail = e.what();
    }
  }
  int link_vertex = out.scan_vertex ? *out.scan_vertex : worst_vertex;
  if (!out.congruent && link_vertex >= 0) out.link_comparison = compare_clinks(c_link(a, link_vertex), c_link(b, link_vertex));

  if (out.congruent) return out;
  auto failed = std::find_if(out.faces.begin(), out.faces.end(), [](const FaceCongruence& fc) { return !fc.ok; });
  auto& w = out.witness;
  if (failed != out.faces.end()) {
    w.kind = WitnessKind::FaceCongruence;
    w.face = static_cast<int>(failed - out.faces.begin());
    w.residual = failed->residual;
    w.detail = failed->detail;
    return out;
  }
  for (std::size_t e = 0; e < out.labels.signs.size(); ++e) {
    if (out.labels.signs[e] == EdgeSign::None) continue;
    const Edge& edge = a.poly.edges()[e];
    w.kind = WitnessKind::DihedralMismatch;
    w.edge = static_cast<int>(e);
    w.angle = complex_dihedral(a, edge.left, edge.right);
    w.angle_prime = complex_dihedral(b, edge.left, edge.right);
    w.residual = std::abs(theta_coordinate(w.angle) - theta_coordinate(w.angle_prime));
    w.detail = "dihedral mismatch at edge " + a.poly.name(edge.u) + "-" + a.poly.name(edge.v) +
               "; every face matches, which validated inputs rule out (weakest hypothesis: " + out.margins_a.weakest + ")";
    return out;
  }
  w.kind = WitnessKind::CirclePropagation;
  w.vertex = worst_vertex;
  w.residual = out.residual;
  w.detail = "seed face map misses circle " + (worst_vertex >= 0 ? a.poly.name(worst_vertex) : std::string("?"));
  return out;
}

bool lemma_three_coaxial_check(const OrientedCircle& o, const OrientedCircle& a, const OrientedCircle& b,
                               const OrientedCircle& c, double tol) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::HypothesisViolated, what); };
  if (same_unoriented(o, a, tol) || same_unoriented(o, b, tol) || same_unoriented(a, b, tol))
    fail("O, A and B must be pairwise distinct");
  if (!are_coaxial(o, a, b, tol)) fail("O, A and B are not in one pencil");
  double d = inv_dist(o, a);
  if (approx_equal(std::abs(d), 1.0, tol)) fail("the pencil of O and A is parabolic");
  if (!approx_equal(d, inv_dist(o, b), tol)) fail("<O, A> differs from <O, B>");
  if (std::abs(inv_dist(o, c)) > tol) fail("C is not orthogonal to O");
  if (std::abs(inv_dist(a, c)) <= tol && std::abs(inv_dist(b, c)) <= tol) fail("C is orthogonal to the whole pencil");
  return !(classify_pair(c, a, tol).segregated && classify_pair(c, b, tol).segregated);
}

Sampled<ThreeCoaxialConfig> random_three_coaxial(Rng& rng, int budget) {
  Sampled<ThreeCoaxialConfig> out;
  for (; out.rejections < budget; ++out.rejections) {
    OrientedCircle o = rng.circle(), a = rng.circle();
    double d = inv_dist(o, a);
    if (std::abs(std::abs(d) - 1.0) < 1e-3 || std::abs(d) > 20.0) continue;
    OrientedCircle b = OrientedCircle::from_lorentz(-(a.lorentz() + 2.0 * d * o.lorentz()));
    Vec4 y = rng.circle().lorentz();
    double dy = eta(y, o.lorentz());
    if (std::abs(dy) > 0.999) continue;
    OrientedCircle c = OrientedCircle::from_lorentz(normalize_spacelike(y - dy * o.lorentz()));
    if (std::abs(inv_dist(c, a)) < 1e-6 || !classify_pair(c, a).segregated) continue;
    out.value = {o, a, b, c};
    return out;
  }
  throw Error(ErrorCode::RejectionBudgetExceeded, "no admissible three-coaxial configuration sampled");
}

}  // namespace circpoly
