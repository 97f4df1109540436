#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circpoly/error.hpp"
#include "circpoly/greenblack.hpp"
#include "circpoly/moebius.hpp"
#include "circpoly/polyhedron.hpp"

namespace circpoly {

enum class OrientationCase { CaseI, CaseII, Inconsistent };
std::string_view orientation_case_name(OrientationCase c);

struct ConvexityReport {
  bool convex = false;
  // Witness when not convex: a face none of whose orientations segregates
  // every circle, and a circle that fails for the better orientation.
  int face = -1;
  int circle = -1;
  std::string detail;
};

// Circle polyhedron: one oriented circle per vertex of an abstract
// polyhedron.  Everything else is derived by build_cpolyhedron and never
// read from input.
struct CPolyhedron {
  AbstractPolyhedron poly;
  std::vector<OrientedCircle> circles;  // by vertex
  std::vector<OrientedCircle> ortho;    // by face; oriented by the convexity search
  std::vector<double> ortho_residual;   // max |<O_f, C_u>| over the face
  ConvexityReport convexity;
  OrientationCase orientation = OrientationCase::Inconsistent;
  double tol = kDefaultTol;

  bool convex() const { return convexity.convex; }
  bool consistently_oriented() const { return orientation == OrientationCase::CaseI; }
};

// A failed build check, reported instead of thrown.
struct CheckIssue {
  ErrorCode code;
  int index = -1;  // edge or face
  std::string detail;
};

// Unitary and coupled edges, in edge order.
std::vector<CheckIssue> edge_issues(const AbstractPolyhedron& p, const std::vector<OrientedCircle>& circles,
                                    double tol = kDefaultTol);

struct FaceFit {
  OrthoFit fit{};
  std::optional<CheckIssue> issue;  // FaceCoaxial, ThreeConsecutiveCoaxial or FaceNotCPlanar
};

FaceFit fit_face(const AbstractPolyhedron& p, const std::vector<OrientedCircle>& circles, int f,
                 double tol = kDefaultTol);

// Throws EdgeCoupled, Unitary, FaceCoaxial, ThreeConsecutiveCoaxial or
// FaceNotCPlanar.  Runs the convexity search and, when convex, the
// orientation classification.
CPolyhedron build_cpolyhedron(const AbstractPolyhedron& p, const std::vector<OrientedCircle>& circles,
                              double tol = kDefaultTol);

// Per face, picks the orientation of O_f that segregates every circle.
// Writes the chosen orientations into `ortho` when given.
ConvexityReport check_convexity(const CPolyhedron& cp, std::vector<OrientedCircle>* ortho = nullptr);

// Order in which the face circles meet O_f+: counterclockwise for every face
// (case i), clockwise for every face (case ii), or mixed.
OrientationCase check_consistent_orientation(const CPolyhedron& cp);

// Case i unchanged; case ii replaced by its antipodal image with every
// orientation reversed.  Throws StillInconsistent otherwise.
CPolyhedron normalize_orientation(const CPolyhedron& cp);

// Throws NotAdjacent unless f and g share an edge.
ComplexAngle complex_dihedral(const CPolyhedron& cp, int f, int g);

// Point of the disk model of cv determined by the neighbour cu, with o
// orthogonal to both: the limit point of the pencil of cu and cv inside the
// disk when they are disjoint, otherwise where o crosses the line of the
// disk whose ends are the two intersection points.  Throws TangentPair or
// FocusNotInDisk.
Vec3 link_point(const OrientedCircle& cu, const OrientedCircle& cv, const OrientedCircle& o, double tol = kDefaultTol);

struct CLink {
  int vertex = -1;
  std::vector<int> faces;      // f_1 .. f_n around the vertex
  std::vector<int> neighbors;  // junction i is the edge to neighbors[i]
  HyperidealPolygonSpec lines;
  ProperReport proper;
  GreenBlackPolygon polygon;  // empty unless proper
  // Largest distance between a black edge end and its link point.
  double link_point_residual = 0.0;

  bool ok() const { return proper.proper(); }
};

// Properness failure is reported in `proper`, not thrown.
CLink c_link(const CPolyhedron& cp, int v);

enum class LinkRelation { Congruent, BlackEdgeCongruent, NotBlackEdgeCongruent, Incompatible };
std::string_view link_relation_name(LinkRelation r);

struct LinkComparison {
  LinkRelation relation = LinkRelation::Incompatible;
  FourVertexResult labels;  // filled for black-edge-congruent links
  double worst = 0.0;       // largest difference among compared quantities
  std::string detail;
};

LinkComparison compare_clinks(const CLink& a, const CLink& b, double tol = 1e-8);

// Inversive distance of every edge, in edge order.
std::vector<double> edge_inversive_distances(const AbstractPolyhedron& p, const std::vector<OrientedCircle>& circles);

struct RealizationReport {
  bool ok = true;
  std::vector<int> offending;  // edge indices
  double worst = 0.0;
};

RealizationReport realization_check(const AbstractPolyhedron& p, const std::vector<OrientedCircle>& circles,
                                    const std::vector<double>& beta, double tol = kDefaultTol);

// Rebuilt image under a Moebius map.
CPolyhedron moebius_image(const CPolyhedron& cp, const MoebiusMap& t);

}  // namespace circpoly
