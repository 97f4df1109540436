#include "circpoly/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace circpoly {

namespace {

[[noreturn]] void fail(const std::string& pointer, const std::string& message) {
  throw Error(ErrorCode::ParseError, (pointer.empty() ? std::string("/") : pointer) + ": " + message);
}

std::string escape_token(const std::string& token) {
  std::string out;
  for (char ch : token) {
    if (ch == '~') out += "~0";
    else if (ch == '/') out += "~1";
    else out += ch;
  }
  return out;
}

std::string child(const std::string& pointer, const std::string& key) { return pointer + "/" + escape_token(key); }
std::string child(const std::string& pointer, std::size_t index) { return pointer + "/" + std::to_string(index); }

void expect_object(const Json& j, const std::string& pointer, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) fail(pointer, "expected an object");
  for (const char* key : required)
    if (!j.contains(key)) fail(pointer, std::string("missing key \"") + key + "\"");
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    auto match = [&](const char* k) { return key == k; };
    if (std::none_of(required.begin(), required.end(), match) && std::none_of(optional.begin(), optional.end(), match))
      fail(child(pointer, key), "unknown key");
  }
}

const Json& expect_array(const Json& j, const std::string& pointer, std::size_t size = 0) {
  if (!j.is_array()) fail(pointer, "expected an array");
  if (size != 0 && j.size() != size) fail(pointer, "expected " + std::to_string(size) + " entries");
  return j;
}

double number(const Json& j, const std::string& pointer) {
  if (!j.is_number()) fail(pointer, "expected a number");
  double x = j.get<double>();
  if (!std::isfinite(x)) fail(pointer, "expected a finite number");
  return x;
}

int orientation(const Json& j, const std::string& pointer) {
  if (!j.is_number_integer() || (j.get<int>() != 1 && j.get<int>() != -1)) fail(pointer, "expected 1 or -1");
  return j.get<int>();
}

Complex complex_pair(const Json& j, const std::string& pointer) {
  expect_array(j, pointer, 2);
  return Complex(number(j[0], child(pointer, 0)), number(j[1], child(pointer, 1)));
}

Vec3 vec3(const Json& j, const std::string& pointer) {
  expect_array(j, pointer, 3);
  return Vec3(number(j[0], child(pointer, 0)), number(j[1], child(pointer, 1)), number(j[2], child(pointer, 2)));
}

void expect_version(const Json& j) {
  const Json& v = j.at("format_version");
  if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
    fail("/format_version", "unsupported version, expected " + std::to_string(kFormatVersion));
}

// Geometric failures while decoding a literal become input errors at the
// literal's location.
template <class F>
auto at_pointer(const std::string& pointer, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(pointer, e.what());
  }
}

Json pair_json(Complex z) { return Json::array({z.real(), z.imag()}); }

std::string edge_name(const AbstractPolyhedron& p, int e) {
  const Edge& edge = p.edges()[static_cast<std::size_t>(e)];
  return p.name(edge.u) + "-" + p.name(edge.v);
}

Json face_json(const AbstractPolyhedron& p, int f) {
  Json out = Json::array();
  for (int v : p.face(f)) out.push_back(p.name(v));
  return out;
}

Json nullable_name(const AbstractPolyhedron& p, int v) { return v < 0 ? Json(nullptr) : Json(p.name(v)); }

Json margins_json(const HypothesisMargins& m) {
  return Json{{"non_unitary", m.non_unitary},
              {"convexity", m.convexity},
              {"face_planarity", m.face_planarity},
              {"weakest", m.weakest}};
}

Json proper_json(const ProperReport& r) {
  return Json{{"status", proper_status_name(r.status)}, {"index", r.index}, {"detail", r.detail}};
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, path + ": cannot write file");
  out << text;
  if (!out) throw Error(ErrorCode::ParseError, path + ": write failed");
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is one past the offending character.
    std::size_t end = std::min(e.byte > 0 ? e.byte - 1 : 0, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    auto colon = what.rfind(": ");
    throw Error(ErrorCode::ParseError, source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                                           (colon == std::string::npos ? what : what.substr(colon + 2)));
  }
}

std::string to_text(const Json& j) { return j.dump(2) + "\n"; }

OrientedCircle circle_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_object() || j.size() != 1) fail(pointer, "expected one of {\"cap\"}, {\"planar\"}, {\"line\"}");
  if (j.contains("cap")) {
    const Json& c = j["cap"];
    std::string ptr = child(pointer, "cap");
    expect_object(c, ptr, {"center", "radius"});
    Vec3 center = vec3(c["center"], child(ptr, "center"));
    double radius = number(c["radius"], child(ptr, "radius"));
    if (center.norm() < 1e-12) fail(child(ptr, "center"), "center must be nonzero");
    if (!(radius > 0.0 && radius < std::numbers::pi)) fail(child(ptr, "radius"), "radius must lie in (0, pi)");
    return OrientedCircle::from_cap({center.normalized(), radius});
  }
  if (j.contains("planar")) {
    const Json& c = j["planar"];
    std::string ptr = child(pointer, "planar");
    expect_object(c, ptr, {"center", "radius", "orientation"});
    Complex center = complex_pair(c["center"], child(ptr, "center"));
    double radius = number(c["radius"], child(ptr, "radius"));
    if (!(radius > 0.0)) fail(child(ptr, "radius"), "radius must be positive");
    int o = orientation(c["orientation"], child(ptr, "orientation"));
    return at_pointer(ptr, [&] { return OrientedCircle::from_planar(PlanarOrientedCircle::circle(center, radius, o)); });
  }
  if (j.contains("line")) {
    const Json& c = j["line"];
    std::string ptr = child(pointer, "line");
    expect_object(c, ptr, {"direction", "offset", "orientation"});
    Complex direction = complex_pair(c["direction"], child(ptr, "direction"));
    if (std::abs(direction) < 1e-12) fail(child(ptr, "direction"), "direction must be nonzero");
    double offset = number(c["offset"], child(ptr, "offset"));
    int o = orientation(c["orientation"], child(ptr, "orientation"));
    return at_pointer(ptr, [&] {
      return OrientedCircle::from_planar(PlanarOrientedCircle::line(direction / std::abs(direction), offset, o));
    });
  }
  fail(child(pointer, j.begin().key()), "unknown circle kind");
}

Json circle_to_json(const OrientedCircle& c) {
  SphericalCap cap = c.to_cap();
  return Json{{"cap", {{"center", {cap.center[0], cap.center[1], cap.center[2]}}, {"radius", cap.radius}}}};
}

CPolyFile cpoly_from_json(const Json& j) {
  expect_object(j, "", {"format_version", "polyhedron", "circles"});
  expect_version(j);
  const Json& poly = j["polyhedron"];
  expect_object(poly, "/polyhedron", {"vertices", "faces"});

  std::vector<std::string> names;
  std::set<std::string> seen;
  const Json& vertices = expect_array(poly["vertices"], "/polyhedron/vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    std::string ptr = child("/polyhedron/vertices", i);
    if (!vertices[i].is_string() || vertices[i].get<std::string>().empty()) fail(ptr, "expected a vertex name");
    if (!seen.insert(vertices[i].get<std::string>()).second) fail(ptr, "duplicate vertex name");
    names.push_back(vertices[i].get<std::string>());
  }

  std::vector<std::vector<std::string>> faces;
  const Json& face_list = expect_array(poly["faces"], "/polyhedron/faces");
  for (std::size_t f = 0; f < face_list.size(); ++f) {
    std::string ptr = child("/polyhedron/faces", f);
    const Json& face = expect_array(face_list[f], ptr);
    std::vector<std::string> entry;
    for (std::size_t k = 0; k < face.size(); ++k) {
      if (!face[k].is_string()) fail(child(ptr, k), "expected a vertex name");
      const std::string& name = face[k].get_ref<const std::string&>();
      if (!seen.count(name))
        throw Error(ErrorCode::UnknownVertex, child(ptr, k) + ": '" + name + "' is not a listed vertex");
      entry.push_back(name);
    }
    faces.push_back(std::move(entry));
  }

  CPolyFile out{AbstractPolyhedron(names, faces), {}};
  const Json& circles = j["circles"];
  if (!circles.is_object()) fail("/circles", "expected an object keyed by vertex name");
  for (const auto& item : circles.items())
    if (out.poly.index_of(item.key()) < 0)
      throw Error(ErrorCode::UnknownVertex, child("/circles", item.key()) + ": '" + item.key() + "' is not a listed vertex");
  for (int v = 0; v < static_cast<int>(out.poly.vertex_count()); ++v) {
    const std::string& name = out.poly.name(v);
    if (!circles.contains(name)) fail("/circles", "missing circle for vertex '" + name + "'");
    out.circles.push_back(circle_from_json(circles[name], child("/circles", name)));
  }
  return out;
}

Json cpoly_to_json(const AbstractPolyhedron& poly, const std::vector<OrientedCircle>& circles) {
  Json faces = Json::array();
  for (int f = 0; f < static_cast<int>(poly.face_count()); ++f) faces.push_back(face_json(poly, f));
  Json circle_map = Json::object();
  for (int v = 0; v < static_cast<int>(poly.vertex_count()); ++v) circle_map[poly.name(v)] = circle_to_json(circles[v]);
  return Json{{"format_version", kFormatVersion},
              {"polyhedron", {{"vertices", poly.names()}, {"faces", faces}}},
              {"circles", circle_map}};
}

CPolyFile load_cpoly(const std::string& path) { return cpoly_from_json(parse_json(read_file(path), path)); }

ConvexPolyhedron3 polyhedron_from_json(const Json& j) {
  expect_object(j, "", {"format_version", "vertices", "faces"});
  expect_version(j);
  ConvexPolyhedron3 p;
  const Json& vertices = expect_array(j["vertices"], "/vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i) p.vertices.push_back(vec3(vertices[i], child("/vertices", i)));
  const Json& faces = expect_array(j["faces"], "/faces");
  for (std::size_t f = 0; f < faces.size(); ++f) {
    std::string ptr = child("/faces", f);
    const Json& face = expect_array(faces[f], ptr);
    std::vector<int> entry;
    for (std::size_t k = 0; k < face.size(); ++k) {
      const Json& idx = face[k];
      if (!idx.is_number_integer()) fail(child(ptr, k), "expected a vertex index");
      long long v = idx.get<long long>();
      if (v < 0 || v >= static_cast<long long>(p.vertices.size()))
        throw Error(ErrorCode::UnknownVertex, child(ptr, k) + ": vertex index " + std::to_string(v) + " out of range");
      entry.push_back(static_cast<int>(v));
    }
    p.faces.push_back(std::move(entry));
  }
  return p;
}

Json polyhedron_to_json(const ConvexPolyhedron3& p) {
  Json vertices = Json::array();
  for (const auto& v : p.vertices) vertices.push_back({v[0], v[1], v[2]});
  return Json{{"format_version", kFormatVersion}, {"vertices", vertices}, {"faces", p.faces}};
}

ConvexPolyhedron3 load_polyhedron(const std::string& path) {
  return polyhedron_from_json(parse_json(read_file(path), path));
}

Json angle_to_json(const ComplexAngle& a) { return Json{{"branch", branch_name(a.branch)}, {"value", a.value}}; }

Json map_to_json(const MoebiusMap& m) {
  return Json{{"a", pair_json(m.a)}, {"b", pair_json(m.b)}, {"c", pair_json(m.c)}, {"d", pair_json(m.d)}};
}

Json greenblack_to_json(const GreenBlackPolygon& p) {
  Json elements = Json::array();
  for (std::size_t k = 0; k < p.size(); ++k) {
    const GBVertex& v = p.vertices[k];
    elements.push_back(
        {{"vertex", {{"color", color_name(v.color)}, {"angle", angle_to_json(v.angle)}, {"source", v.source}}}});
    const GBEdge& e = p.edges[k];
    elements.push_back({{"edge", {{"color", color_name(e.color)}, {"length", e.length}, {"source", e.source}}}});
  }
  return Json{{"elements", elements}, {"green_edges", p.green_edge_count()}};
}

Validation validate(const CPolyFile& file, double tol) {
  const AbstractPolyhedron& p = file.poly;
  Validation out;
  Json checks = Json::array();
  bool all_pass = true;
  auto record = [&](const char* name, bool pass, Json witnesses, Json extra = Json::object()) {
    Json c{{"check", name}, {"status", pass ? "pass" : "fail"}};
    for (const auto& item : extra.items()) c[item.key()] = item.value();
    c["witnesses"] = std::move(witnesses);
    checks.push_back(std::move(c));
    all_pass = all_pass && pass;
  };
  auto skip = [&](const char* name, const std::string& reason) {
    checks.push_back(Json{{"check", name}, {"status", "skipped"}, {"reason", reason}});
    all_pass = false;
  };

  auto diagnostics = validate_abstract(p);
  Json abstract_witnesses = Json::array();
  for (const auto& d : diagnostics) abstract_witnesses.push_back({{"check", d.check}, {"detail", d.detail}});
  record("abstract", diagnostics.empty(), abstract_witnesses);

  bool buildable = diagnostics.empty();
  if (!buildable) {
    for (const char* name : {"edge_uncoupled", "non_unitary", "c_planarity", "convexity", "orientation", "properness"})
      skip(name, "abstract combinatorics failed");
  } else {
    std::vector<double> d = edge_inversive_distances(p, file.circles);
    Json coupled = Json::array(), unitary = Json::array();
    for (const CheckIssue& issue : edge_issues(p, file.circles, tol)) {
      Json w{{"edge", edge_name(p, issue.index)},
             {"inversive_distance", d[static_cast<std::size_t>(issue.index)]},
             {"code", error_name(issue.code)},
             {"detail", issue.detail}};
      (issue.code == ErrorCode::Unitary ? unitary : coupled).push_back(std::move(w));
    }
    record("edge_uncoupled", coupled.empty(), coupled);
    record("non_unitary", unitary.empty(), unitary);

    Json planar = Json::array();
    double worst_residual = 0.0;
    for (int f = 0; f < static_cast<int>(p.face_count()); ++f) {
      FaceFit fit = fit_face(p, file.circles, f, tol);
      if (fit.issue) {
        planar.push_back(Json{{"face", face_json(p, f)},
                              {"code", error_name(fit.issue->code)},
                              {"detail", fit.issue->detail}});
      } else {
        worst_residual = std::max(worst_residual, fit.fit.residual);
      }
    }
    record("c_planarity", planar.empty(), planar, Json{{"worst_residual", worst_residual}});
    buildable = coupled.empty() && unitary.empty() && planar.empty();
  }

  if (diagnostics.empty() && !buildable) {
    for (const char* name : {"convexity", "orientation", "properness"}) skip(name, "c-polyhedron checks failed");
  } else if (buildable) {
    CPolyhedron cp = build_cpolyhedron(p, file.circles, tol);
    Json convex_witnesses = Json::array();
    if (!cp.convex())
      convex_witnesses.push_back(Json{{"face", cp.convexity.face >= 0 ? face_json(p, cp.convexity.face) : Json()},
                                      {"circle", nullable_name(p, cp.convexity.circle)},
                                      {"detail", cp.convexity.detail}});
    record("convexity", cp.convex(), convex_witnesses);
    if (!cp.convex()) {
      skip("orientation", "not convex");
      skip("properness", "not convex");
    } else {
      OrientationCase oc = cp.orientation;
      Json orientation_witnesses = Json::array();
      if (oc == OrientationCase::Inconsistent)
        orientation_witnesses.push_back(Json{{"detail", "faces disagree on the cyclic order of their circles"}});
      record("orientation", oc != OrientationCase::Inconsistent, orientation_witnesses,
             Json{{"case", orientation_case_name(oc)}, {"normalized", oc == OrientationCase::CaseII}});
      if (oc == OrientationCase::Inconsistent) {
        skip("properness", "inconsistent orientation");
      } else {
        if (oc == OrientationCase::CaseII) cp = normalize_orientation(cp);
        Json improper = Json::array();
        for (int v = 0; v < static_cast<int>(p.vertex_count()); ++v) {
          CLink link = c_link(cp, v);
          if (!link.ok()) {
            Json w = proper_json(link.proper);
            w["vertex"] = p.name(v);
            improper.push_back(std::move(w));
          }
        }
        record("properness", improper.empty(), improper);
      }
      out.cp = std::move(cp);
    }
  }

  out.passed = all_pass;
  out.report = Json{{"format_version", kFormatVersion},
                    {"report", "validation"},
                    {"passed", all_pass},
                    {"tolerance", tol},
                    {"counts", {{"vertices", p.vertex_count()}, {"edges", p.edge_count()}, {"faces", p.face_count()}}},
                    {"checks", checks}};
  out.report["margins"] = out.cp ? margins_json(hypothesis_margins(*out.cp)) : Json();
  return out;
}

Json link_report(const CPolyhedron& cp, const CLink& link) {
  const AbstractPolyhedron& p = cp.poly;
  Json faces = Json::array(), neighbors = Json::array();
  for (int f : link.faces) faces.push_back(face_json(p, f));
  for (int u : link.neighbors) neighbors.push_back(p.name(u));
  Json out{{"format_version", kFormatVersion},
           {"report", "link"},
           {"vertex", p.name(link.vertex)},
           {"faces", faces},
           {"neighbors", neighbors},
           {"proper", proper_json(link.proper)}};
  if (link.ok()) {
    out["polygon"] = greenblack_to_json(link.polygon);
    out["link_point_residual"] = link.link_point_residual;
  } else {
    out["polygon"] = nullptr;
  }
  return out;
}

Json labeling_report(const CPolyhedron& a, const EdgeSignLabeling& labels) {
  const AbstractPolyhedron& p = a.poly;
  Json signs = Json::object(), mixed = Json::array();
  for (int e = 0; e < static_cast<int>(p.edge_count()); ++e) {
    EdgeSign s = labels.signs[static_cast<std::size_t>(e)];
    if (s != EdgeSign::None) signs[edge_name(p, e)] = std::string(1, edge_sign_char(s));
    if (labels.mixed[static_cast<std::size_t>(e)]) mixed.push_back(edge_name(p, e));
  }
  Json out{{"format_version", kFormatVersion},
           {"report", "labeling"},
           {"labeled", labels.labeled()},
           {"labels", signs},
           {"mixed", mixed}};
  try {
    int v = combinatorial_scan(labels.signs, p);
    out["scan_vertex"] = p.name(v);
    out["sign_changes"] = sign_changes_around(labels.signs, p, v);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoLabeledEdge) throw;
    out["scan_vertex"] = nullptr;
    out["sign_changes"] = nullptr;
  }
  return out;
}

Json congruence_report(const CPolyhedron& a, const CongruenceVerdict& v) {
  const AbstractPolyhedron& p = a.poly;
  Json labeling = labeling_report(a, v.labels);
  const CongruenceWitness& w = v.witness;
  Json witness{{"kind", witness_kind_name(w.kind)}};
  if (w.kind != WitnessKind::None) {
    witness["face"] = w.face >= 0 ? face_json(p, w.face) : Json();
    witness["edge"] = w.edge >= 0 ? Json(edge_name(p, w.edge)) : Json();
    witness["vertex"] = nullable_name(p, w.vertex);
    if (w.kind == WitnessKind::DihedralMismatch) {
      witness["angle"] = angle_to_json(w.angle);
      witness["angle_prime"] = angle_to_json(w.angle_prime);
    }
    witness["residual"] = w.residual;
    witness["detail"] = w.detail;
  }
  Json comparison;
  if (v.link_comparison) {
    const LinkComparison& c = *v.link_comparison;
    std::string marks;
    for (Label l : c.labels.labels) marks += label_char(l);
    comparison = Json{{"relation", link_relation_name(c.relation)},
                      {"worst", c.worst},
                      {"sign_changes", c.labels.sign_changes},
                      {"labels", marks},
                      {"detail", c.detail}};
  }
  double worst_face = 0.0;
  for (const auto& f : v.faces) worst_face = std::max(worst_face, f.residual);
  return Json{{"format_version", kFormatVersion},
              {"report", "congruence"},
              {"verdict", v.congruent ? "congruent" : "not_congruent"},
              {"map", map_to_json(v.map)},
              {"residual", v.residual},
              {"seed_face", v.seed_face >= 0 ? face_json(p, v.seed_face) : Json()},
              {"worst_face_residual", worst_face},
              {"labels", labeling["labels"]},
              {"mixed", labeling["mixed"]},
              {"scan_vertex", v.scan_vertex ? Json(p.name(*v.scan_vertex)) : Json()},
              {"sign_changes", v.sign_changes},
              {"link_comparison", comparison},
              {"witness", witness},
              {"margins", {{"a", margins_json(v.margins_a)}, {"b", margins_json(v.margins_b)}}}};
}

Json classification_report(const ConvexPolyhedron3& p, const HyperidealClass& cls) {
  AbstractPolyhedron comb = p.combinatorics();
  Json edges = Json::array();
  for (std::size_t e = 0; e < cls.edges.size(); ++e) {
    const Edge& edge = comb.edges()[e];
    edges.push_back(Json{{"vertices", {edge.u, edge.v}},
                         {"relation", edge_relation_name(cls.edges[e])},
                         {"distance", cls.edge_distance[e]}});
  }
  auto indices_where = [](const std::vector<bool>& flags, bool value) {
    Json out = Json::array();
    for (std::size_t i = 0; i < flags.size(); ++i)
      if (flags[i] == value) out.push_back(i);
    return out;
  };
  std::string regime = cls.all_edges_miss ? "all_edges_miss" : cls.all_edges_meet ? "all_edges_meet" : "mixed";
  return Json{{"format_version", kFormatVersion},
              {"report", "classification"},
              {"strictly_hyperideal", cls.strictly_hyperideal},
              {"non_unitary", cls.non_unitary},
              {"edge_regime", regime},
              {"vertices_inside", indices_where(cls.vertex_outside, false)},
              {"faces_missing_ball", indices_where(cls.face_meets_ball, false)},
              {"edges", edges},
              {"detail", cls.detail}};
}

Json suite_report(const std::vector<SuiteResult>& results, std::uint64_t seed) {
  Json suites = Json::array();
  bool passed = true;
  for (const auto& r : results) {
    passed = passed && r.passed();
    suites.push_back(Json{{"suite", r.name},
                          {"status", r.passed() ? "pass" : "fail"},
                          {"trials", r.trials},
                          {"failures", r.failures},
                          {"metric", r.metric},
                          {"worst", r.worst},
                          {"threshold", r.threshold},
                          {"first_failure", r.first_failure >= 0 ? Json(r.first_failure) : Json()},
                          {"first_detail", r.first_detail}});
  }
  return Json{{"format_version", kFormatVersion},
              {"report", "suite"},
              {"seed", seed},
              {"passed", passed},
              {"suites", suites}};
}

}  // namespace circpoly
