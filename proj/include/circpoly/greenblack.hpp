#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circpoly/hyperbolic.hpp"

namespace circpoly {

enum class Color { Green, Black };
std::string_view color_name(Color c);

// Green vertices carry a real interior angle; black vertices sit at the ends
// of green edges and carry their (right, or at most right) angle.
struct GBVertex {
  Color color = Color::Green;
  ComplexAngle angle;
  // Support line (black) or junction (green) the vertex came from; -1 if none.
  int source = -1;
};

struct GBEdge {
  Color color = Color::Black;
  double length = 0.0;
  int source = -1;
};

// Cyclic polygon: edges[k] joins vertices[k] and vertices[k + 1].  Positions
// are hyperboloid points of some disk model, or empty for abstract data.
struct GreenBlackPolygon {
  std::vector<GBVertex> vertices;
  std::vector<GBEdge> edges;
  std::vector<Vec3> positions;

  std::size_t size() const { return vertices.size(); }
  std::size_t green_edge_count() const;
  // Complex angle of element 2k (vertex k) or 2k + 1 (edge k): the interior
  // angle of a vertex, i times the length of a green edge.
  ComplexAngle element_angle(std::size_t element) const;
};

// Open chain p_1 ... p_n: n vertices and n - 1 edges; the free vertices p_1
// and p_n carry no angle.
struct GreenBlackChain {
  std::vector<GBVertex> vertices;
  std::vector<GBEdge> edges;
  std::vector<Vec3> positions;

  std::size_t size() const { return vertices.size(); }
  double free_distance() const { return hyp_distance(positions.front(), positions.back()); }
};

// Oriented support lines l_1 ... l_n, counterclockwise along the polygon,
// each with the polygon on its left.
struct HyperidealPolygonSpec {
  std::vector<Vec3> normals;
};

enum class ProperStatus { Proper, IdealVertex, NestedLines, VertexOutside, Unbounded, NotConvex };
std::string_view proper_status_name(ProperStatus s);

struct ProperReport {
  ProperStatus status = ProperStatus::Proper;
  // Offending line or junction index; junction i joins lines i and i + 1.
  int index = -1;
  std::string detail;

  bool proper() const { return status == ProperStatus::Proper; }
};

ProperReport is_proper_hyperideal(const HyperidealPolygonSpec& spec, double tol = kDefaultTol);

// Throws IdealVertex or NotProper (with the reason in the message).
GreenBlackPolygon greenblack_from_hyperideal(const HyperidealPolygonSpec& spec, double tol = kDefaultTol);

struct GBViolation {
  std::string rule;  // "rule1", "rule2", "rule3", "length", "angle", "convexity"
  int index = -1;
  std::string detail;
};

std::vector<GBViolation> validate_greenblack(const GreenBlackPolygon& p, double tol = kDefaultTol);

// Polygon with the given vertex positions, counterclockwise, and edge colors;
// vertex colors and angles are derived.
GreenBlackPolygon polygon_from_points(const std::vector<Vec3>& points, const std::vector<Color>& edge_colors);

// Klein-model convexity of a closed counterclockwise polygon: every turn is
// to the left (collinear allowed within tol) and the boundary winds once.
bool is_convex_polygon(const std::vector<Vec3>& points, double tol = kDefaultTol);

struct ChainSpec {
  std::vector<Color> edge_colors;
  std::vector<double> lengths;  // one per edge
  std::vector<double> angles;   // interior angles at p_2 ... p_{n-1}
};

// Lays the chain out from the origin along +x, turning left at each vertex,
// and throws NonConvex unless closing it gives a convex polygon.
GreenBlackChain arm_chain_build(const ChainSpec& spec, double tol = kDefaultTol);
// Same, with every black vertex at a right angle.  Lengths and green angles
// are consumed in order of appearance.
GreenBlackChain arm_chain_build(const std::vector<double>& black_lengths, const std::vector<double>& green_lengths,
                                const std::vector<double>& green_vertex_angles,
                                const std::vector<Color>& color_pattern, double tol = kDefaultTol);

ChainSpec chain_spec(const GreenBlackChain& c);
// Consecutive vertices first .. first + count - 1 (cyclically) of a polygon
// with positions.
GreenBlackChain subchain(const GreenBlackPolygon& p, std::size_t first, std::size_t count);

struct ArmLemmaResult {
  bool consistent = true;
  bool equality = false;
  double distance = 0.0;        // |p_1 p_n|
  double distance_prime = 0.0;  // |p_1' p_n'|
  std::string detail;
};

// Equality detection threshold for lemma checks.
inline constexpr double kEqualityTol = 1e-7;

// Throws IncompatibleChains or HypothesisViolated.
ArmLemmaResult arm_lemma_check(const GreenBlackChain& c, const GreenBlackChain& c_prime, double tol = kDefaultTol);

enum class Label { None, Plus, Minus };
char label_char(Label l);

struct FourVertexResult {
  // One entry per element (2k vertex, 2k + 1 edge); black elements are None.
  std::vector<Label> labels;
  int sign_changes = 0;
};

// Throws IncompatibleChains or NotBlackEdgeCongruent.
FourVertexResult four_vertex_labels(const GreenBlackPolygon& p, const GreenBlackPolygon& p_prime,
                                    double tol = kDefaultTol);

// Cyclic count of + to - and - to + transitions, skipping None.
int cyclic_sign_changes(const std::vector<Label>& labels);

}  // namespace circpoly
