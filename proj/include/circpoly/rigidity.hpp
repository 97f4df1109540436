#pragma once

// Moebius congruence of circle polyhedra: face-wise maps, the dihedral sign
// labeling, the combinatorial scan and the end-to-end certificate.

#include <optional>
#include <string>
#include <vector>

#include "circpoly/cpolyhedron.hpp"
#include "circpoly/lemmas.hpp"
#include "circpoly/random.hpp"

namespace circpoly {

struct FaceCongruence {
  bool ok = false;
  MoebiusMap map;
  double residual = 0.0;  // worst Lorentz-vector gap over the face circles
  int anchor_u = -1, anchor_v = -1;
  std::string detail;
};

// Map sending the face's circles of `a` onto those of `b`, anchored on the
// ends of two consecutive circles' lines in the face's disk model.  The
// best-conditioned consecutive pair is used.  Throws DegenerateFace when no
// pair gives three well-separated anchor points.
FaceCongruence face_congruence(const CPolyhedron& a, const CPolyhedron& b, int f, double tol = 1e-8);

enum class EdgeSign { None, Plus, Minus, Indeterminate };
char edge_sign_char(EdgeSign s);

struct EdgeSignLabeling {
  std::vector<EdgeSign> signs;  // by edge index
  // Unprimed ortho-circles meet while the primed ones are nested; the
  // non-meeting rule decides these, so they are flagged for reports.
  std::vector<bool> mixed;
  std::size_t labeled() const;
};

// Per edge with faces f, g: none when the inversive distances of the
// ortho-circles agree within tol; when the primed pair meets, plus iff the
// unprimed distance is smaller; otherwise plus iff it is larger.  Tangent
// pairs on either side are indeterminate.
EdgeSignLabeling edge_labels(const CPolyhedron& a, const CPolyhedron& b, double tol = 1e-9);

// Sign changes in cyclic order around v, skipping unlabeled edges.
int sign_changes_around(const std::vector<EdgeSign>& signs, const AbstractPolyhedron& p, int v);

// First vertex in name order incident to a labeled edge with at most two
// sign changes.  Throws NoLabeledEdge or LemmaViolated.
int combinatorial_scan(const std::vector<EdgeSign>& signs, const AbstractPolyhedron& p);

enum class WitnessKind { None, FaceCongruence, DihedralMismatch, CirclePropagation };
std::string_view witness_kind_name(WitnessKind k);

struct CongruenceWitness {
  WitnessKind kind = WitnessKind::None;
  int face = -1;
  int edge = -1;
  int vertex = -1;
  ComplexAngle angle, angle_prime;
  double residual = 0.0;
  std::string detail;
};

// Dimensionless headroom of each validation; the smallest names the
// hypothesis closest to failing.
struct HypothesisMargins {
  double non_unitary = 0.0;     // min over edges of ||d| - 1|
  double convexity = 0.0;       // min inversive distance of a circle to a non-incident O_f+
  double face_planarity = 0.0;  // min over faces of the unused fraction of the residual gate
  std::string weakest;
};

HypothesisMargins hypothesis_margins(const CPolyhedron& cp);

struct CongruenceVerdict {
  bool congruent = false;
  MoebiusMap map;
  double residual = 0.0;  // worst circle gap under map
  int seed_face = -1;
  std::vector<FaceCongruence> faces;
  EdgeSignLabeling labels;
  std::optional<int> scan_vertex;
  std::optional<LinkComparison> link_comparison;
  int sign_changes = 0;
  CongruenceWitness witness;
  HypothesisMargins margins_a, margins_b;
};

// Throws ValidationMissing unless both sides are convex, consistently
// oriented, properly linked at every vertex and share combinatorics.
CongruenceVerdict certify_congruence(const CPolyhedron& a, const CPolyhedron& b, double tol = 1e-8);

// True when the conclusion holds: C is not segregated from both A+ and B+.
// Throws HypothesisViolated unless O, A, B are distinct members of one
// non-parabolic pencil with <O, A> = <O, B>, C is orthogonal to O and C is
// not orthogonal to the whole pencil.
bool lemma_three_coaxial_check(const OrientedCircle& o, const OrientedCircle& a, const OrientedCircle& b,
                               const OrientedCircle& c, double tol = 1e-9);

struct ThreeCoaxialConfig {
  OrientedCircle o, a, b, c;
};

// O, A random, B the reflection of A in O within their pencil, C random
// orthogonal to O and segregated from A+ (rejection sampled).
Sampled<ThreeCoaxialConfig> random_three_coaxial(Rng& rng, int budget = 1000);

}  // namespace circpoly
