#include "circpoly/polyhedron.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "circpoly/error.hpp"

namespace circpoly {

bool name_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i])), db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      // Compare digit runs by value: strip leading zeros, then length, then text.
      std::size_t ia = a.find_first_not_of('0', i), jb = b.find_first_not_of('0', j);
      ia = std::min(ia, ie);
      jb = std::min(jb, je);
      if (ie - ia != je - jb) return ie - ia < je - jb;
      int c = a.compare(ia, ie - ia, b, jb, je - jb);
      if (c != 0) return c < 0;
      if (ie - i != je - j) return ie - i < je - j;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

AbstractPolyhedron::AbstractPolyhedron(std::vector<std::string> names, const std::vector<std::vector<std::string>>& faces) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], static_cast<int>(i));
  std::vector<std::vector<int>> idx;
  for (const auto& f : faces) {
    std::vector<int> row;
    for (const auto& n : f) {
      auto it = index.find(n);
      if (it == index.end()) throw Error(ErrorCode::UnknownVertex, "face refers to unknown vertex '" + n + "'");
      row.push_back(it->second);
    }
    idx.push_back(std::move(row));
  }
  *this = AbstractPolyhedron(std::move(names), std::move(idx));
}

AbstractPolyhedron::AbstractPolyhedron(std::vector<std::string> names, std::vector<std::vector<int>> faces) {
  const int n = static_cast<int>(names.size());
  std::vector<int> order(names.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return name_less(names[a], names[b]); });
  std::vector<int> remap(names.size());
  for (int i = 0; i < n; ++i) {
    remap[order[i]] = i;
    names_.push_back(names[order[i]]);
  }
  for (auto& f : faces) {
    for (int& v : f) {
      if (v < 0 || v >= n) throw Error(ErrorCode::UnknownVertex, "vertex index " + std::to_string(v) + " out of range");
      v = remap[v];
    }
  }
  faces_ = std::move(faces);
  derive();
}

void AbstractPolyhedron::derive() {
  std::map<std::pair<int, int>, Edge> found;
  for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
    const auto& face = faces_[f];
    for (std::size_t i = 0; i < face.size(); ++i) {
      int a = face[i], b = face[(i + 1) % face.size()];
      if (a == b) continue;
      auto key = std::minmax(a, b);
      Edge& e = found[{key.first, key.second}];
      e.u = key.first;
      e.v = key.second;
      (a < b ? e.left : e.right) = f;
    }
  }
  edges_.clear();
  for (auto& [key, e] : found) edges_.push_back(e);
}

int AbstractPolyhedron::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

int AbstractPolyhedron::edge_index(int u, int v) const {
  auto key = std::minmax(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key,
                             [](const Edge& e, const std::pair<int, int>& k) { return std::pair(e.u, e.v) < k; });
  if (it == edges_.end() || it->u != key.first || it->v != key.second) return -1;
  return static_cast<int>(it - edges_.begin());
}

int AbstractPolyhedron::succ(int f, int v) const {
  const auto& face = faces_[f];
  auto it = std::find(face.begin(), face.end(), v);
  if (it == face.end()) return -1;
  return ++it == face.end() ? face.front() : *it;
}

int AbstractPolyhedron::pred(int f, int v) const {
  const auto& face = faces_[f];
  auto it = std::find(face.begin(), face.end(), v);
  if (it == face.end()) return -1;
  return it == face.begin() ? face.back() : *(it - 1);
}

std::vector<int> AbstractPolyhedron::faces_around(int v) const {
  std::vector<int> containing;
  for (int f = 0; f < static_cast<int>(faces_.size()); ++f)
    if (std::count(faces_[f].begin(), faces_[f].end(), v) == 1) containing.push_back(f);
  if (containing.empty()) return {};
  std::vector<int> out{containing.front()};
  while (true) {
    int target = pred(out.back(), v);
    int next = -1;
    for (int g : containing)
      if (succ(g, v) == target) next = g;
    if (next == -1) return {};
    if (next == out.front()) break;
    if (std::find(out.begin(), out.end(), next) != out.end()) return {};
    out.push_back(next);
  }
  if (out.size() != containing.size()) return {};
  return out;
}

std::vector<int> AbstractPolyhedron::neighbors_around(int v) const {
  std::vector<int> out;
  for (int f : faces_around(v)) out.push_back(pred(f, v));
  return out;
}

int AbstractPolyhedron::shared_edge(int f, int g) const {
  if (f == g) return -1;
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
    const Edge& e = edges_[i];
    if ((e.left == f && e.right == g) || (e.left == g && e.right == f)) return i;
  }
  return -1;
}

AbstractPolyhedron AbstractPolyhedron::reversed() const {
  auto faces = faces_;
  for (auto& f : faces) std::reverse(f.begin(), f.end());
  return AbstractPolyhedron(names_, std::move(faces));
}

std::vector<AbstractDiagnostic> validate_abstract(const AbstractPolyhedron& p) {
  std::vector<AbstractDiagnostic> out;
  const int nv = static_cast<int>(p.vertex_count()), nf = static_cast<int>(p.face_count());
  std::vector<int> degree(p.vertex_count(), 0);
  for (int f = 0; f < nf; ++f) {
    const auto& face = p.face(f);
    std::set<int> distinct(face.begin(), face.end());
    if (face.size() < 3) out.push_back({"face_size", "face " + std::to_string(f) + " has fewer than 3 vertices"});
    if (distinct.size() != face.size())
      out.push_back({"repeated_vertex", "face " + std::to_string(f) + " repeats a vertex"});
  }
  std::map<std::pair<int, int>, int> directed;
  for (int f = 0; f < nf; ++f) {
    const auto& face = p.face(f);
    for (std::size_t i = 0; i < face.size(); ++i) {
      auto key = std::pair(face[i], face[(i + 1) % face.size()]);
      if (++directed[key] == 2)
        out.push_back({"directed_edge", "oriented edge " + p.name(key.first) + "->" + p.name(key.second) +
                                            " appears in two faces"});
    }
  }
  for (const Edge& e : p.edges()) {
    ++degree[e.u];
    ++degree[e.v];
    if (e.left == -1 || e.right == -1)
      out.push_back({"edge_faces", "edge " + p.name(e.u) + "-" + p.name(e.v) + " is not shared by two opposite faces"});
  }
  long euler = static_cast<long>(nv) - static_cast<long>(p.edge_count()) + static_cast<long>(nf);
  if (euler != 2) out.push_back({"euler", "V - E + F = " + std::to_string(euler)});
  for (int v = 0; v < nv; ++v) {
    if (degree[v] == 0) {
      out.push_back({"isolated_vertex", "vertex " + p.name(v) + " is in no face"});
      continue;
    }
    if (degree[v] < 3) out.push_back({"degree", "vertex " + p.name(v) + " has degree " + std::to_string(degree[v])});
    if (p.faces_around(v).empty())
      out.push_back({"rotation", "faces around " + p.name(v) + " do not form a single cycle"});
  }
  if (nf > 0) {
    std::vector<std::vector<int>> adj(p.face_count());
    for (const Edge& e : p.edges())
      if (e.left >= 0 && e.right >= 0) adj[e.left].push_back(e.right), adj[e.right].push_back(e.left);
    std::vector<bool> seen(p.face_count(), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int count = 1;
    while (!q.empty()) {
      int f = q.front();
      q.pop();
      for (int g : adj[f])
        if (!seen[g]) seen[g] = true, ++count, q.push(g);
    }
    if (count != nf) out.push_back({"connectivity", "face adjacency graph is disconnected"});
  } else {
    out.push_back({"face_size", "no faces"});
  }
  return out;
}

namespace {

// Orders each face counterclockwise as seen from outside a convex solid.
AbstractPolyhedron oriented(const std::vector<Eigen::Vector3d>& pts, std::vector<std::vector<int>> faces) {
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& p : pts) centroid += p;
  centroid /= static_cast<double>(pts.size());
  for (auto& f : faces) {
    Eigen::Vector3d c = Eigen::Vector3d::Zero();
    for (int v : f) c += pts[v];
    c /= static_cast<double>(f.size());
    Eigen::Vector3d n = (pts[f[1]] - pts[f[0]]).cross(pts[f[2]] - pts[f[0]]);
    if (n.dot(c - centroid) < 0) std::reverse(f.begin(), f.end());
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < pts.size(); ++i) names.push_back(std::to_string(i));
  return AbstractPolyhedron(names, std::move(faces));
}

}  // namespace

AbstractPolyhedron cube_polyhedron() {
  std::vector<Eigen::Vector3d> pts;
  for (int i = 0; i < 8; ++i) pts.emplace_back(i & 4 ? 1 : -1, i & 2 ? 1 : -1, i & 1 ? 1 : -1);
  return oriented(pts, {{4, 6, 7, 5}, {0, 1, 3, 2}, {2, 3, 7, 6}, {0, 4, 5, 1}, {1, 5, 7, 3}, {0, 2, 6, 4}});
}

AbstractPolyhedron octahedron_polyhedron() {
  std::vector<Eigen::Vector3d> pts{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  std::vector<std::vector<int>> faces;
  for (int x : {0, 1})
    for (int y : {2, 3})
      for (int z : {4, 5}) faces.push_back({x, y, z});
  return oriented(pts, std::move(faces));
}

AbstractPolyhedron tetrahedron_polyhedron() {
  std::vector<Eigen::Vector3d> pts{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  return oriented(pts, {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}});
}

}  // namespace circpoly
