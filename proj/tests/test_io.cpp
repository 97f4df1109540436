#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "circpoly/io.hpp"
#include "circpoly/svg.hpp"
#include "support.hpp"

using namespace circpoly;
using circpoly::testing::code_of;

namespace {

CPolyFile cube_file(double a) {
  CPolyhedron cp = dual_cpolyhedron(cube_fixture(a)).cp;
  return CPolyFile{cp.poly, cp.circles};
}

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

const Json& check_named(const Json& report, const std::string& name) {
  for (const auto& c : report["checks"])
    if (c["check"] == name) return c;
  FAIL("missing check " << name);
  static Json none;
  return none;
}

// Structural equality with numbers compared to a relative tolerance.
bool same_json(const Json& a, const Json& b, double tol = 1e-12) {
  if (a.is_number() && b.is_number()) {
    double x = a.get<double>(), y = b.get<double>();
    return std::abs(x - y) <= tol * (1.0 + std::max(std::abs(x), std::abs(y)));
  }
  if (a.type() != b.type() || a.size() != b.size()) return false;
  if (a.is_object()) {
    for (const auto& item : a.items())
      if (!b.contains(item.key()) || !same_json(item.value(), b[item.key()], tol)) return false;
    return true;
  }
  if (a.is_array()) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!same_json(a[i], b[i], tol)) return false;
    return true;
  }
  return a == b;
}

Json parse(const std::string& text) { return parse_json(text, "test"); }

}  // namespace

TEST_CASE("circle literals") {
  auto cap = circle_from_json(parse(R"({"cap": {"center": [0, 0, 2], "radius": 0.5}})"));
  CHECK(circle_distance(cap, OrientedCircle::from_cap({Vec3(0, 0, 1), 0.5})) < 1e-15);

  auto planar = circle_from_json(parse(R"({"planar": {"center": [1, -2], "radius": 0.5, "orientation": -1}})"));
  auto expect = OrientedCircle::from_planar(PlanarOrientedCircle::circle(Complex(1, -2), 0.5, -1));
  CHECK(circle_distance(planar, expect) < 1e-15);

  auto line = circle_from_json(parse(R"({"line": {"direction": [0, 2], "offset": 0.3, "orientation": 1}})"));
  auto expect_line = OrientedCircle::from_planar(PlanarOrientedCircle::line(Complex(0, 1), 0.3, 1));
  CHECK(circle_distance(line, expect_line) < 1e-15);

  // The writer emits caps that read back to the same circle.
  for (const auto& c : {cap, planar, line, expect_line.reversed()}) {
    Json j = circle_to_json(c);
    CHECK(j.contains("cap"));
    CHECK(circle_distance(circle_from_json(j), c) < 1e-14);
  }
}

TEST_CASE("circle literal errors carry a pointer") {
  auto msg = message_of([] { circle_from_json(parse(R"({"cap": {"center": [0, 0, 1], "radius": 4}})"), "/c"); });
  CHECK(msg.find("/c/cap/radius") != std::string::npos);
  msg = message_of([] {
    circle_from_json(parse(R"({"planar": {"center": [0, 0], "radius": 1, "orientation": 0}})"), "/c");
  });
  CHECK(msg.find("/c/planar/orientation") != std::string::npos);
  msg = message_of([] { circle_from_json(parse(R"({"cap": {"center": [0, 0, 1], "radius": 1, "r": 2}})")); });
  CHECK(msg.find("/cap/r: unknown key") != std::string::npos);
  CHECK(code_of([] { circle_from_json(parse(R"({"disk": {}})")); }) == ErrorCode::ParseError);
  CHECK(code_of([] { circle_from_json(parse(R"({"cap": {"center": [0, 0], "radius": 1}})")); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("syntax errors report line and column") {
  std::string text = "{\n  \"format_version\": 1,\n  \"x\": ]\n}\n";
  auto msg = message_of([&] { parse_json(text, "f.json"); });
  CHECK(msg.find("f.json:3:8") != std::string::npos);
  CHECK(code_of([&] { parse_json(text); }) == ErrorCode::ParseError);
  CHECK(code_of([] { read_file("/nonexistent/file.json"); }) == ErrorCode::ParseError);
}

TEST_CASE("c-polyhedron files") {
  CPolyFile cube = cube_file(0.8);
  Json j = cpoly_to_json(cube.poly, cube.circles);
  CPolyFile back = cpoly_from_json(j);
  CHECK(back.poly.names() == cube.poly.names());
  CHECK(back.poly.faces() == cube.poly.faces());
  for (std::size_t v = 0; v < cube.circles.size(); ++v) CHECK(circle_distance(back.circles[v], cube.circles[v]) < 1e-14);

  SUBCASE("strict keys and version") {
    Json extra = j;
    extra["comment"] = "x";
    CHECK(message_of([&] { cpoly_from_json(extra); }).find("/comment: unknown key") != std::string::npos);
    Json old = j;
    old["format_version"] = 2;
    CHECK(code_of([&] { cpoly_from_json(old); }) == ErrorCode::ParseError);
    Json missing = j;
    missing.erase("format_version");
    CHECK(code_of([&] { cpoly_from_json(missing); }) == ErrorCode::ParseError);
    Json nested = j;
    nested["polyhedron"]["edges"] = Json::array();
    CHECK(message_of([&] { cpoly_from_json(nested); }).find("/polyhedron/edges") != std::string::npos);
  }
  SUBCASE("vertex names") {
    Json bad_face = j;
    bad_face["polyhedron"]["faces"][1][0] = "Q";
    CHECK(code_of([&] { cpoly_from_json(bad_face); }) == ErrorCode::UnknownVertex);
    CHECK(message_of([&] { cpoly_from_json(bad_face); }).find("/polyhedron/faces/1/0") != std::string::npos);
    Json bad_circle = j;
    bad_circle["circles"]["Q"] = bad_circle["circles"]["F0"];
    CHECK(code_of([&] { cpoly_from_json(bad_circle); }) == ErrorCode::UnknownVertex);
    Json no_circle = j;
    no_circle["circles"].erase("F3");
    CHECK(message_of([&] { cpoly_from_json(no_circle); }).find("missing circle for vertex 'F3'") != std::string::npos);
    Json dup = j;
    dup["polyhedron"]["vertices"][1] = "F0";
    CHECK(code_of([&] { cpoly_from_json(dup); }) == ErrorCode::ParseError);
  }
}

TEST_CASE("polyhedron files") {
  ConvexPolyhedron3 p = cube_fixture(0.7);
  ConvexPolyhedron3 back = polyhedron_from_json(polyhedron_to_json(p));
  CHECK(back.faces == p.faces);
  for (std::size_t i = 0; i < p.vertices.size(); ++i) CHECK((back.vertices[i] - p.vertices[i]).norm() == 0.0);
  Json bad = polyhedron_to_json(p);
  bad["faces"][0][0] = 99;
  CHECK(code_of([&] { polyhedron_from_json(bad); }) == ErrorCode::UnknownVertex);
  bad = polyhedron_to_json(p);
  bad["vertices"][2] = Json::array({1, 2});
  CHECK(message_of([&] { polyhedron_from_json(bad); }).find("/vertices/2") != std::string::npos);
}

TEST_CASE("validation report") {
  SUBCASE("fixture passes every check") {
    Validation v = validate(cube_file(0.8));
    CHECK(v.passed);
    REQUIRE(v.cp);
    CHECK(v.report["checks"].size() == 7);
    for (const auto& c : v.report["checks"]) CHECK(c["status"] == "pass");
    CHECK(v.report["margins"]["weakest"].is_string());
  }
  SUBCASE("tangent adjacent circles") {
    // Cube with half-width 1/sqrt 2: every edge touches the sphere, so
    // adjacent support circles are tangent.
    CPolyFile f = cube_file(0.8);
    for (auto& c : f.circles) {
      SphericalCap cap = c.to_cap();
      c = OrientedCircle::from_cap({cap.center, std::numbers::pi / 4});
    }
    Validation v = validate(f);
    CHECK_FALSE(v.passed);
    const Json& nu = check_named(v.report, "non_unitary");
    CHECK(nu["status"] == "fail");
    REQUIRE(nu["witnesses"].size() == 12);
    CHECK(nu["witnesses"][0]["code"] == "Unitary");
    CHECK(std::abs(nu["witnesses"][0]["inversive_distance"].get<double>() - 1.0) < 1e-9);
    CHECK(check_named(v.report, "convexity")["status"] == "skipped");
  }
  SUBCASE("flipped circle is not convex") {
    CPolyFile f = cube_file(0.65);
    f.circles[2] = f.circles[2].reversed();
    Validation v = validate(f);
    CHECK_FALSE(v.passed);
    const Json& cx = check_named(v.report, "convexity");
    CHECK(cx["status"] == "fail");
    CHECK(cx["witnesses"][0]["face"].is_array());
    CHECK(check_named(v.report, "properness")["status"] == "skipped");
  }
  SUBCASE("mirror image is normalized") {
    CPolyFile f = cube_file(0.65);
    for (auto& c : f.circles) c = antipodal_reversed(c);
    Validation v = validate(f);
    CHECK(v.passed);
    const Json& o = check_named(v.report, "orientation");
    CHECK(o["case"] == "case_ii");
    CHECK(o["normalized"] == true);
    REQUIRE(v.cp);
    CHECK(v.cp->consistently_oriented());
  }
  SUBCASE("bad combinatorics skip the geometry") {
    AbstractPolyhedron p({"a", "b", "c"}, std::vector<std::vector<std::string>>{{"a", "b", "c"}, {"a", "c", "b"}});
    Rng rng(5);
    Validation v = validate(CPolyFile{p, {rng.circle(), rng.circle(), rng.circle()}});
    CHECK(check_named(v.report, "abstract")["status"] == "fail");
    CHECK(check_named(v.report, "c_planarity")["status"] == "skipped");
    CHECK_FALSE(v.cp);
  }
}

TEST_CASE("validation round trip") {
  std::vector<CPolyFile> files{cube_file(0.8), cube_file(0.65), cube_file(0.65)};
  files[2].circles[2] = files[2].circles[2].reversed();
  Rng rng(77);
  {
    CPolyhedron cp = dual_cpolyhedron(random_hull(11)).cp;
    MoebiusMap t = rng.moebius(1.5);
    std::vector<OrientedCircle> moved;
    for (const auto& c : cp.circles) moved.push_back(moebius_apply_circle(t, c));
    files.push_back(CPolyFile{cp.poly, moved});
  }
  for (const auto& f : files) {
    Json first = validate(f).report;
    std::string text = to_text(cpoly_to_json(f.poly, f.circles));
    CPolyFile again = cpoly_from_json(parse_json(text));
    Json second = validate(again).report;
    CHECK(first["passed"] == second["passed"]);
    for (std::size_t i = 0; i < first["checks"].size(); ++i) {
      CHECK(first["checks"][i]["status"] == second["checks"][i]["status"]);
      CHECK(same_json(first["checks"][i]["witnesses"], second["checks"][i]["witnesses"], 1e-9));
    }
    // A second pass through the writer is a fixed point.
    CHECK(same_json(parse_json(to_text(cpoly_to_json(again.poly, again.circles))), parse_json(text), 1e-14));
  }
}

TEST_CASE("reports") {
  CPolyhedron cp = dual_cpolyhedron(cube_fixture(0.8)).cp;
  Json link = link_report(cp, c_link(cp, 0));
  CHECK(link["proper"]["status"] == "proper");
  CHECK(link["polygon"]["elements"].size() == 8);
  CHECK(link["polygon"]["green_edges"] == 0);
  CHECK(link["polygon"]["elements"][0]["vertex"]["angle"]["branch"] == "real");

  CPolyhedron img = moebius_image(cp, Rng(4).moebius(1.0));
  Json cong = congruence_report(cp, certify_congruence(cp, img));
  CHECK(cong["verdict"] == "congruent");
  CHECK(cong["map"]["a"].size() == 2);
  CHECK(cong["residual"].get<double>() < 1e-8);
  CHECK(cong["witness"]["kind"] == "none");
  CHECK(cong["labels"].empty());

  CPolyhedron other = dual_cpolyhedron(cube_fixture(0.79)).cp;
  Json no = congruence_report(cp, certify_congruence(cp, other));
  CHECK(no["verdict"] == "not_congruent");
  CHECK(no["witness"]["kind"] != "none");
  CHECK(no["witness"]["detail"].get<std::string>().size() > 0);

  Json cls = classification_report(cube_fixture(0.65), classify_strictly_hyperideal(cube_fixture(0.65)));
  CHECK(cls["strictly_hyperideal"] == true);
  CHECK(cls["edge_regime"] == "all_edges_meet");
  CHECK(cls["edges"].size() == 12);

  SuiteResult r{"x", "m", 3, 1, 0.5, 0.1, 2, "bad"};
  Json s = suite_report({r}, 9);
  CHECK(s["passed"] == false);
  CHECK(s["suites"][0]["first_failure"] == 2);
  CHECK(s["seed"] == 9);
}

TEST_CASE("svg figures") {
  CPolyhedron bb2 = dual_cpolyhedron(cube_fixture(0.65)).cp;
  std::string fig = link_svg(bb2, c_link(bb2, 0));
  auto count = [](const std::string& s, const std::string& what) {
    std::size_t n = 0;
    for (auto pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos + 1)) ++n;
    return n;
  };
  CHECK(fig.rfind("<svg", 0) == 0);
  CHECK(count(fig, "stroke=\"#2a9d3a\" stroke-width=\"0.01200\"") == 4);  // green edges
  CHECK(count(fig, "stroke=\"#111111\" stroke-width=\"0.00500\"") == 8);  // right-angle marks
  CHECK(fig == link_svg(bb2, c_link(bb2, 0)));

  CLink broken = c_link(bb2, 0);
  broken.proper.status = ProperStatus::NestedLines;
  std::string diag = link_svg(bb2, broken);
  CHECK(diag.find("not proper: nested_lines") != std::string::npos);
  CHECK(count(diag, "#c0392b") == 4);

  std::string overview = overview_svg(bb2.poly, bb2.circles);
  CHECK(count(overview, "<circle") == 6);
  CHECK(count(overview, "<polygon") == 6);
}
