#pragma once

// Convex polyhedra in the Klein ball and their dual circle polyhedra.

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "circpoly/cpolyhedron.hpp"

namespace circpoly {

// Euclidean-compact convex polyhedron; faces counterclockwise from outside.
struct ConvexPolyhedron3 {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::vector<int>> faces;

  AbstractPolyhedron combinatorics() const;
};

// Plane {x : x . normal = offset} with outward unit normal.
struct FacePlane {
  Eigen::Vector3d normal;
  double offset = 0.0;
};

// Newell normal of the face, offset through the face centroid.
FacePlane face_plane(const ConvexPolyhedron3& p, int f);

// Throws NotConvex for bad combinatorics, non-planar faces, inward normals
// or a vertex beyond some face plane.
void check_convex(const ConvexPolyhedron3& p, double tol = 1e-9);

enum class EdgeRelation { MeetsOpenBall, Tangent, MissesClosedBall };
std::string_view edge_relation_name(EdgeRelation r);

struct HyperidealClass {
  std::vector<bool> vertex_outside;   // |v| > 1 + tol
  std::vector<bool> face_meets_ball;  // plane offset < 1 - tol
  std::vector<EdgeRelation> edges;    // in combinatorics().edges() order
  std::vector<double> edge_distance;  // distance from the origin to the edge segment
  bool strictly_hyperideal = false;
  bool non_unitary = false;
  bool all_edges_miss = false;  // no edge meets the closed ball
  bool all_edges_meet = false;  // every edge meets the open ball
  std::string detail;
};

// Throws NotConvex.
HyperidealClass classify_strictly_hyperideal(const ConvexPolyhedron3& p, double tol = 1e-9);

// Circle where the plane cuts the sphere, its companion disk on the side the
// normal points to.  Throws PlaneMissesBall unless |offset| < 1.
OrientedCircle support_circle(const Eigen::Vector3d& normal, double offset);

// Circle where the cone from v touches the sphere; the companion disk faces v.
// Throws VertexInsideBall.
OrientedCircle tangency_circle(const Eigen::Vector3d& v, double tol = 1e-9);

struct DualResult {
  CPolyhedron cp;
  HyperidealClass cls;
  // Largest deviation between a face ortho-circle and the tangency circle of
  // the primal vertex, as the Euclidean norm of the Lorentz difference up to
  // orientation.
  double tangency_residual = 0.0;
};

// Faces of p become circle vertices (named F0, F1, ...), vertices of p become
// faces ordered by the faces around them.  Normalizes to case i.  Throws
// ValidationFailed unless p is strictly hyperideal and non-unitary, and
// propagates build errors.
DualResult dual_cpolyhedron(const ConvexPolyhedron3& p, double tol = 1e-9);

enum class FixtureKind { Cube, Octahedron, Dodecahedron, Icosahedron, RandomHull };
std::string_view fixture_kind_name(FixtureKind k);
FixtureKind parse_fixture_kind(std::string_view name);  // throws ParseError

// Cube: half-width a in (1/sqrt 3, 1).  Octahedron: vertex distance in
// (1, sqrt 3).  Dodecahedron and icosahedron: scale of the standard golden
// ratio coordinates.  RandomHull: param is the plane count (>= 4).
// Fixtures must sit at least 1e-3 inside the strictly hyperideal window.
// Throws ParamsOutOfRange or RejectionBudgetExceeded.
ConvexPolyhedron3 generate_fixture(FixtureKind kind, double param, std::uint64_t seed = 0);

ConvexPolyhedron3 cube_fixture(double a);
ConvexPolyhedron3 octahedron_fixture(double s);
ConvexPolyhedron3 dodecahedron_fixture(double k);
ConvexPolyhedron3 icosahedron_fixture(double k);
// Intersection of `planes` random half-spaces whose boundary planes cut the
// ball, kept when strictly hyperideal with proper links at every dual vertex.
// Unbounded or degenerate draws count towards `budget` as rejections.
ConvexPolyhedron3 random_hull(std::uint64_t seed, int planes = 8, int budget = 1000);

// Intersection of {x . n_i <= d_i} with 0 < d_i; redundant planes are dropped.
ConvexPolyhedron3 halfspace_intersection(const std::vector<Eigen::Vector3d>& normals, const std::vector<double>& offsets);

// Convex hull of points in general position (no four coplanar on the hull);
// triangular faces counterclockwise from outside.  Points strictly inside
// the hull are dropped and the rest re-indexed.
ConvexPolyhedron3 convex_hull(const std::vector<Eigen::Vector3d>& points);

}  // namespace circpoly
