#pragma once

#include <string>
#include <vector>

namespace circpoly {

// Undirected edge u < v with the face holding the oriented edge u -> v on
// its left and the face holding v -> u on its right.
struct Edge {
  int u = -1, v = -1;
  int left = -1, right = -1;
};

struct AbstractDiagnostic {
  std::string check;
  std::string detail;
};

// Oriented cellular decomposition of the sphere.  Faces list vertex indices
// counterclockwise as seen from outside.  Vertices are kept in name order
// (numeric runs compare by value), which fixes every deterministic scan.
class AbstractPolyhedron {
 public:
  AbstractPolyhedron() = default;
  // Throws UnknownVertex for a face entry missing from `names`.
  AbstractPolyhedron(std::vector<std::string> names, const std::vector<std::vector<std::string>>& faces);
  AbstractPolyhedron(std::vector<std::string> names, std::vector<std::vector<int>> faces);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t face_count() const { return faces_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& name(int v) const { return names_[static_cast<std::size_t>(v)]; }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;  // -1 if absent
  const std::vector<int>& face(int f) const { return faces_[static_cast<std::size_t>(f)]; }
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  const std::vector<Edge>& edges() const { return edges_; }
  // -1 when u and v are not adjacent.
  int edge_index(int u, int v) const;

  int succ(int f, int v) const;
  int pred(int f, int v) const;
  // Faces around v, counterclockwise from outside, starting with the lowest
  // face index; junction i between faces i and i + 1 is the edge
  // v - pred(face i, v).  Empty if the rotation at v is not a single cycle.
  std::vector<int> faces_around(int v) const;
  std::vector<int> neighbors_around(int v) const;
  // Faces sharing an edge with f, or -1.
  int shared_edge(int f, int g) const;

  // Face order reversed everywhere: the mirror orientation.
  AbstractPolyhedron reversed() const;

 private:
  void derive();

  std::vector<std::string> names_;
  std::vector<std::vector<int>> faces_;
  std::vector<Edge> edges_;
};

// Numeric-aware name comparison: "v2" < "v10".
bool name_less(const std::string& a, const std::string& b);

std::vector<AbstractDiagnostic> validate_abstract(const AbstractPolyhedron& p);

// Standard combinatorics used by fixtures and tests.
AbstractPolyhedron cube_polyhedron();
AbstractPolyhedron octahedron_polyhedron();
AbstractPolyhedron tetrahedron_polyhedron();

}  // namespace circpoly
