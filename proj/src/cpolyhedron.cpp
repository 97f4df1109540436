#include "circpoly/cpolyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "circpoly/error.hpp"

namespace circpoly {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string face_label(int f) { return "face " + std::to_string(f); }

// Circles of the face failing segregation from o; the count of failures.
int segregation_failures(const CPolyhedron& cp, const OrientedCircle& o, int* first_failure) {
  int failures = 0;
  for (int u = 0; u < static_cast<int>(cp.circles.size()); ++u) {
    if (!classify_pair(cp.circles[u], o, cp.tol).segregated) {
      if (failures++ == 0 && first_failure) *first_failure = u;
    }
  }
  return failures;
}

}  // namespace

std::string_view orientation_case_name(OrientationCase c) {
  switch (c) {
    case OrientationCase::CaseI: return "case_i";
    case OrientationCase::CaseII: return "case_ii";
    case OrientationCase::Inconsistent: return "inconsistent";
  }
  return "unknown";
}

std::string_view link_relation_name(LinkRelation r) {
  switch (r) {
    case LinkRelation::Congruent: return "congruent";
    case LinkRelation::BlackEdgeCongruent: return "black_edge_congruent";
    case LinkRelation::NotBlackEdgeCongruent: return "not_black_edge_congruent";
    case LinkRelation::Incompatible: return "incompatible";
  }
  return "unknown";
}

std::vector<CheckIssue> edge_issues(const AbstractPolyhedron& p, const std::vector<OrientedCircle>& circles,
                                    double tol) {
  std::vector<CheckIssue> out;
  for (int e = 0; e < static_cast<int>(p.edge_count()); ++e) {
    const Edge& edge = p.edges()[e];
    std::string name = "edge " + p.name(edge.u) + "-" + p.name(edge.v);
    auto pc = classify_pair(circles[edge.u], circles[edge.v], tol);
    if (approx_equal(std::abs(pc.invdist), 1.0, tol))
      out.push_back({ErrorCode::Unitary, e, name});
    else if (!pc.uncoupled)
      out.push_back({ErrorCode::EdgeCoupled, e, name + " (" + std::string(pair_tag_name(pc.tag)) + ")"});
  }
  return out;
}

FaceFit fit_face(const AbstractPolyhedron& p, const std::vector<OrientedCircle>& circles, int f, double tol) {
  FaceFit out;
  const auto& face = p.face(f);
  std::vector<OrientedCircle> fc;
  for (int v : face) fc.push_back(circles[v]);
  try {
    out.fit = fit_ortho_circle(fc, tol);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::Coaxial) {
      out.issue = CheckIssue{ErrorCode::FaceCoaxial, f, face_label(f)};
    } else if (err.code() == ErrorCode::NoRealOrthoCircle) {
      out.issue = CheckIssue{ErrorCode::FaceNotCPlanar, f, face_label(f) + " has no real orthogonal circle"};
    } else {
      throw;
    }
    return out;
  }
  const std::size_t n = face.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (are_coaxial(fc[i], fc[(i + 1) % n], fc[(i + 2) % n], tol)) {
      out.issue = CheckIssue{ErrorCode::ThreeConsecutiveCoaxial, f,
                             face_label(f) + " at vertex " + p.name(face[(i + 1) % n])};
      return out;
    }
  }
  if (out.fit.residual > tol * static_cast<double>(n))
    out.issue = CheckIssue{ErrorCode::FaceNotCPlanar, f,
                           face_label(f) + " orthogonality residual " + std::to_string(out.fit.residual)};
  return out;
}

CPolyhedron build_cpolyhedron(const AbstractPolyhedron& p, const std::vector<OrientedCircle>& circles, double tol) {
  if (circles.size() != p.vertex_count())
    throw Error(ErrorCode::HypothesisViolated, "need exactly one circle per vertex");
  CPolyhedron cp;
  cp.poly = p;
  cp.circles = circles;
  cp.tol = tol;
  auto edges = edge_issues(p, circles, tol);
  if (!edges.empty()) throw Error(edges.front().code, edges.front().detail);
  for (int f = 0; f < static_cast<int>(p.face_count()); ++f) {
    FaceFit ff = fit_face(p, circles, f, tol);
    if (ff.issue) throw Error(ff.issue->code, ff.issue->detail);
    cp.ortho.push_back(ff.fit.circle);
    cp.ortho_residual.push_back(ff.fit.residual);
  }
  cp.convexity = check_convexity(cp, &cp.ortho);
  if (cp.convex()) cp.orientation = check_consistent_orientation(cp);
  return cp;
}

ConvexityReport check_convexity(const CPolyhedron& cp, std::vector<OrientedCircle>* ortho) {
  ConvexityReport rep;
  rep.convex = true;
  for (int f = 0; f < static_cast<int>(cp.ortho.size()); ++f) {
    const OrientedCircle& o = cp.ortho[f];
    int fail_plus = -1, fail_minus = -1;
    int plus = segregation_failures(cp, o, &fail_plus);
    if (plus == 0) {
      if (ortho) (*ortho)[f] = o;
      continue;
    }
    int minus = segregation_failures(cp, o.reversed(), &fail_minus);
    if (minus == 0) {
      if (ortho) (*ortho)[f] = o.reversed();
      continue;
    }
    if (rep.convex) {
      rep.convex = false;
      rep.face = f;
      rep.circle = plus <= minus ? fail_plus : fail_minus;
      rep.detail = "circle " + cp.poly.name(rep.circle) + " is not segregated from either orientation of " +
                   face_label(f) + "'s orthogonal circle";
    }
  }
  return rep;
}

OrientationCase check_consistent_orientation(const CPolyhedron& cp) {
  if (!cp.convex()) return OrientationCase::Inconsistent;
  bool all_forward = true, all_backward = true;
  for (int f = 0; f < static_cast<int>(cp.poly.face_count()); ++f) {
    DiskModel model(cp.ortho[f]);
    const auto& face = cp.poly.face(f);
    std::vector<double> phi;
    for (int u : face) {
      // Midpoint of the arc of the boundary inside C_u's companion disk.
      Vec3 n = model.line_normal(cp.circles[u]);
      phi.push_back(std::atan2(n[1], n[0]));
    }
    double forward = 0.0, backward = 0.0;
    bool tie = false;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      double step = std::fmod(phi[(i + 1) % phi.size()] - phi[i] + 2.0 * kTwoPi, kTwoPi);
      if (step < 1e-9 || step > kTwoPi - 1e-9) tie = true;
      forward += step;
      backward += kTwoPi - step;
    }
    bool fwd = !tie && std::abs(forward - kTwoPi) < 1e-6;
    bool bwd = !tie && std::abs(backward - kTwoPi) < 1e-6;
    all_forward = all_forward && fwd;
    all_backward = all_backward && bwd;
  }
  if (all_forward) return OrientationCase::CaseI;
  if (all_backward) return OrientationCase::CaseII;
  return OrientationCase::Inconsistent;
}

CPolyhedron normalize_orientation(const CPolyhedron& cp) {
  if (cp.orientation == OrientationCase::CaseI) return cp;
  if (cp.orientation == OrientationCase::CaseII) {
    std::vector<OrientedCircle> flipped;
    for (const auto& c : cp.circles) flipped.push_back(antipodal_reversed(c));
    CPolyhedron out = build_cpolyhedron(cp.poly, flipped, cp.tol);
    if (out.orientation == OrientationCase::CaseI) return out;
  }
  throw Error(ErrorCode::StillInconsistent, "orientation is not consistent after normalization");
}

ComplexAngle complex_dihedral(const CPolyhedron& cp, int f, int g) {
  if (cp.poly.shared_edge(f, g) < 0)
    throw Error(ErrorCode::NotAdjacent, face_label(f) + " and " + face_label(g) + " share no edge");
  return acos_theta(inv_dist(cp.ortho[f], cp.ortho[g]));
}

Vec3 link_point(const OrientedCircle& cu, const OrientedCircle& cv, const OrientedCircle& o, double tol) {
  double d = inv_dist(cu, cv);
  if (approx_equal(std::abs(d), 1.0, tol)) throw Error(ErrorCode::TangentPair, "circles are tangent");
  DiskModel model(cv);
  Vec3 m = model.to_model(cu.lorentz() - d * cv.lorentz());
  if (std::abs(d) > 1.0) return normalize_point(m);
  try {
    return line_intersection(normalize_normal(m), model.line_normal(o), tol);
  } catch (const Error&) {
    throw Error(ErrorCode::FocusNotInDisk, "orthogonal circle misses the line through the intersection points");
  }
}

CLink c_link(const CPolyhedron& cp, int v) {
  if (!cp.convex() || !cp.consistently_oriented())
    throw Error(ErrorCode::HypothesisViolated, "c-links need a convex, consistently oriented c-polyhedron");
  CLink link;
  link.vertex = v;
  link.faces = cp.poly.faces_around(v);
  if (link.faces.empty()) throw Error(ErrorCode::HypothesisViolated, "vertex has no face cycle");
  const OrientedCircle& cv = cp.circles[v];
  DiskModel model(cv);
  for (int f : link.faces) {
    link.neighbors.push_back(cp.poly.pred(f, v));
    link.lines.normals.push_back(model.line_normal(cp.ortho[f].reversed()));
  }
  link.proper = is_proper_hyperideal(link.lines, cp.tol);
  if (!link.proper.proper()) return link;
  link.polygon = greenblack_from_hyperideal(link.lines, cp.tol);
  const std::size_t n = link.polygon.size();
  for (std::size_t k = 0; k < n; ++k) {
    const GBEdge& e = link.polygon.edges[k];
    if (e.color != Color::Black) continue;
    int f = link.faces[static_cast<std::size_t>(e.source)];
    Vec3 start = link_point(cp.circles[cp.poly.succ(f, v)], cv, cp.ortho[f], cp.tol);
    Vec3 end = link_point(cp.circles[cp.poly.pred(f, v)], cv, cp.ortho[f], cp.tol);
    link.link_point_residual = std::max({link.link_point_residual, hyp_distance(start, link.polygon.positions[k]),
                                         hyp_distance(end, link.polygon.positions[(k + 1) % n])});
  }
  return link;
}

LinkComparison compare_clinks(const CLink& a, const CLink& b, double tol) {
  LinkComparison out;
  if (!a.ok() || !b.ok()) {
    out.detail = "a link is improper";
    return out;
  }
  const auto &p = a.polygon, &q = b.polygon;
  if (p.size() != q.size()) {
    out.detail = "different numbers of elements";
    return out;
  }
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p.edges[k].color != q.edges[k].color || p.vertices[k].color != q.vertices[k].color) {
      out.detail = "color patterns differ at element " + std::to_string(2 * k);
      return out;
    }
  }
  double black = 0.0, rest = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    double& slot = p.edges[k].color == Color::Black ? black : rest;
    slot = std::max(slot, std::abs(p.edges[k].length - q.edges[k].length));
    rest = std::max(rest, theta_distance(p.vertices[k].angle, q.vertices[k].angle));
  }
  out.worst = std::max(black, rest);
  if (black > tol) {
    out.relation = LinkRelation::NotBlackEdgeCongruent;
    out.detail = "black edge lengths differ by " + std::to_string(black);
    return out;
  }
  if (rest <= tol) {
    out.relation = LinkRelation::Congruent;
    return out;
  }
  out.relation = LinkRelation::BlackEdgeCongruent;
  out.labels = four_vertex_labels(p, q, tol);
  return out;
}

std::vector<double> edge_inversive_distances(const AbstractPolyhedron& p, const std::vector<OrientedCircle>& circles) {
  std::vector<double> out;
  for (const Edge& e : p.edges()) out.push_back(inv_dist(circles[e.u], circles[e.v]));
  return out;
}

RealizationReport realization_check(const AbstractPolyhedron& p, const std::vector<OrientedCircle>& circles,
                                    const std::vector<double>& beta, double tol) {
  if (beta.size() != p.edge_count() || circles.size() != p.vertex_count())
    throw Error(ErrorCode::HypothesisViolated, "labels or circles do not match the polyhedron");
  RealizationReport rep;
  auto d = edge_inversive_distances(p, circles);
  for (std::size_t i = 0; i < d.size(); ++i) {
    double gap = std::abs(d[i] - beta[i]);
    rep.worst = std::max(rep.worst, gap);
    if (gap > tol * (1.0 + std::abs(beta[i]))) {
      rep.ok = false;
      rep.offending.push_back(static_cast<int>(i));
    }
  }
  return rep;
}

CPolyhedron moebius_image(const CPolyhedron& cp, const MoebiusMap& t) {
  std::vector<OrientedCircle> image;
  for (const auto& c : cp.circles) image.push_back(moebius_apply_circle(t, c));
  return build_cpolyhedron(cp.poly, image, cp.tol);
}

}  // namespace circpoly
