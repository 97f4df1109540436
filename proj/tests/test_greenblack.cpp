#include <doctest.h>

#include <cmath>
#include <numbers>

#include "circpoly/greenblack.hpp"
#include "circpoly/lemmas.hpp"
#include "fixtures.hpp"
#include "support.hpp"

using namespace circpoly;
using circpoly::testing::code_of;
using std::numbers::pi;

namespace {

HyperidealPolygonSpec symmetric_triangle(double r) {
  return {{support_line(0.0, r), support_line(2 * pi / 3, r), support_line(4 * pi / 3, r)}};
}

bool has_rule(const std::vector<GBViolation>& v, const std::string& rule, int index) {
  for (const auto& x : v)
    if (x.rule == rule && x.index == index) return true;
  return false;
}

}  // namespace

TEST_CASE("symmetric truncated triangle is a right-angled hexagon") {
  auto spec = symmetric_triangle(1.0);
  CHECK(is_proper_hyperideal(spec).proper());
  auto p = greenblack_from_hyperideal(spec);
  REQUIRE(p.size() == 6);
  CHECK(p.green_edge_count() == 3);
  double d = -eta3(spec.normals[0], spec.normals[1]);
  // Oracle: the perpendicular between two of the lines has length arccosh d.
  double green = std::acosh(d);
  // Oracle: a right-angled hexagon with alternate sides g has the other sides
  // b with cosh b = (cosh^2 g + cosh g) / sinh^2 g.
  double cb = (std::cosh(green) * std::cosh(green) + std::cosh(green)) / std::pow(std::sinh(green), 2);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(p.edges[k].color == (k % 2 == 0 ? Color::Black : Color::Green));
    CHECK(p.vertices[k].color == Color::Black);
    CHECK(p.vertices[k].angle.value == doctest::Approx(pi / 2).epsilon(1e-12));
    if (k % 2 == 1) CHECK(p.edges[k].length == doctest::Approx(green).epsilon(1e-12));
    if (k % 2 == 0) CHECK(std::cosh(p.edges[k].length) == doctest::Approx(cb).epsilon(1e-10));
  }
  CHECK(validate_greenblack(p).empty());
}

TEST_CASE("intersecting support lines give an ordinary polygon") {
  auto spec = symmetric_triangle(0.3);
  REQUIRE(is_proper_hyperideal(spec).proper());
  auto p = greenblack_from_hyperideal(spec);
  REQUIRE(p.size() == 3);
  CHECK(p.green_edge_count() == 0);
  auto plain = polygon_from_points(p.positions, {Color::Black, Color::Black, Color::Black});
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(p.vertices[k].color == Color::Green);
    CHECK(p.vertices[k].angle.value == doctest::Approx(plain.vertices[k].angle.value).epsilon(1e-10));
    CHECK(p.edges[k].length == doctest::Approx(plain.edges[k].length).epsilon(1e-12));
  }
  CHECK(validate_greenblack(p).empty());
}

TEST_CASE("improper hyperideal polygons") {
  SUBCASE("reversed lines bound an unbounded region") {
    auto spec = symmetric_triangle(0.3);
    for (auto& n : spec.normals) n = -n;
    auto rep = is_proper_hyperideal(spec);
    CHECK(rep.status == ProperStatus::Unbounded);
    CHECK(code_of([&] { greenblack_from_hyperideal(spec); }) == ErrorCode::NotProper);
  }
  SUBCASE("hyperideal vertex crossing a middle line") {
    double r = 0.5, phi = 0.2;
    HyperidealPolygonSpec spec{{support_line(0.0, r),
                                line_through(origin_point(), Vec3(-std::cos(phi), std::sin(phi), 0.0)),
                                support_line(pi, r)}};
    auto rep = is_proper_hyperideal(spec);
    CHECK(rep.status == ProperStatus::VertexOutside);
    CHECK(rep.index == 2);
  }
  SUBCASE("ideal vertex") {
    HyperidealPolygonSpec spec{{support_line(0.0, 0.3), support_line(pi / 2, 0.3), support_line(pi, 0.3),
                                support_line(3 * pi / 2, 0.3)}};
    CHECK(is_proper_hyperideal(spec).proper());
    // Consecutive lines are asymptotic once sinh^2 r = 1.
    double r = std::asinh(1.0);
    for (int i = 0; i < 4; ++i) spec.normals[i] = support_line(i * pi / 2, r);
    CHECK(is_proper_hyperideal(spec).status == ProperStatus::IdealVertex);
    CHECK(code_of([&] { greenblack_from_hyperideal(spec); }) == ErrorCode::IdealVertex);
  }
}

TEST_CASE("random proper polygons") {
  Rng rng(21);
  int mixed = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto spec = random_hyperideal_spec(rng, rng.integer(3, 8));
    auto rep = is_proper_hyperideal(spec);
    if (!rep.proper()) continue;
    auto p = greenblack_from_hyperideal(spec);
    std::size_t ultra = 0;
    for (std::size_t i = 0; i < spec.normals.size(); ++i)
      if (-eta3(spec.normals[i], spec.normals[(i + 1) % spec.normals.size()]) > 1.0) ++ultra;
    CHECK(p.green_edge_count() == ultra);
    CHECK(p.size() == spec.normals.size() + ultra);
    auto v = validate_greenblack(p);
    CHECK(v.empty());
    if (ultra > 0 && ultra < spec.normals.size()) ++mixed;
    // Green elements carry the complex angle of the lines they join.
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p.edges[k].color == Color::Green) {
        int j = p.edges[k].source;
        auto a = complex_angle(spec.normals[j], spec.normals[(j + 1) % spec.normals.size()]);
        CHECK(a.branch == ComplexAngle::Branch::Imaginary);
        CHECK(p.edges[k].length == doctest::Approx(a.value).epsilon(1e-9));
      }
    }
  }
  CHECK(mixed > 10);
}

TEST_CASE("validation flags rule violations") {
  auto p = greenblack_from_hyperideal(symmetric_triangle(1.0));
  SUBCASE("adjacent green edges") {
    p.edges[0].color = Color::Green;
    auto v = validate_greenblack(p);
    CHECK(has_rule(v, "rule1", 0));
    CHECK(has_rule(v, "rule1", 1));
  }
  SUBCASE("black angle off by ten tolerances") {
    p.vertices[2].angle.value = pi / 2 + 10 * kDefaultTol;
    auto v = validate_greenblack(p);
    CHECK(has_rule(v, "rule3", 2));
    CHECK(v.size() == 1);
  }
  SUBCASE("vertex color") {
    p.vertices[3].color = Color::Green;
    CHECK(has_rule(validate_greenblack(p), "rule2", 3));
  }
  SUBCASE("non-convex positions") {
    std::swap(p.positions[1], p.positions[4]);
    auto v = validate_greenblack(p);
    CHECK(has_rule(v, "convexity", -1));
  }
}

TEST_CASE("arm chains") {
  SUBCASE("all-black arm") {
    ChainSpec spec{{Color::Black, Color::Black, Color::Black}, {1.0, 1.0, 1.0}, {1.5, 1.5}};
    auto c = arm_chain_build(spec);
    REQUIRE(c.size() == 4);
    CHECK(angle_at(c.positions[1], c.positions[0], c.positions[2]) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(hyp_distance(c.positions[2], c.positions[3]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.vertices[1].color == Color::Green);
  }
  SUBCASE("black-green-black") {
    auto c = arm_chain_build({1.0, 1.2}, {0.7}, {}, {Color::Black, Color::Green, Color::Black});
    REQUIRE(c.size() == 4);
    CHECK(std::abs(angle_at(c.positions[1], c.positions[0], c.positions[2]) - pi / 2) < 1e-9);
    CHECK(std::abs(angle_at(c.positions[2], c.positions[1], c.positions[3]) - pi / 2) < 1e-9);
    CHECK(c.vertices[1].color == Color::Black);
    CHECK(c.vertices[2].color == Color::Black);
    CHECK(c.edges[1].length == 0.7);
  }
  SUBCASE("reflection keeps the free distance") {
    ChainSpec spec{{Color::Black, Color::Green, Color::Black, Color::Black},
                   {0.8, 0.5, 1.1, 0.9},
                   {pi / 2, pi / 2, 2.0}};
    ChainSpec rev{{spec.edge_colors.rbegin(), spec.edge_colors.rend()},
                  {spec.lengths.rbegin(), spec.lengths.rend()},
                  {spec.angles.rbegin(), spec.angles.rend()}};
    CHECK(arm_chain_build(spec).free_distance() ==
          doctest::Approx(arm_chain_build(rev).free_distance()).epsilon(1e-12));
  }
  SUBCASE("over-turning arm is rejected") {
    ChainSpec spec{{Color::Black, Color::Black, Color::Black, Color::Black}, {1, 1, 1, 1}, {0.3, 0.3, 0.3}};
    CHECK(code_of([&] { arm_chain_build(spec); }) == ErrorCode::NonConvex);
  }
  SUBCASE("pattern must start and end black") {
    CHECK(code_of([&] { arm_chain_build({1.0}, {0.5}, {}, {Color::Green, Color::Black}); }) ==
          ErrorCode::HypothesisViolated);
  }
}

TEST_CASE("arm lemma check") {
  ChainSpec spec{{Color::Black, Color::Green, Color::Black, Color::Black},
                 {0.8, 0.5, 1.1, 0.9},
                 {pi / 2, pi / 2, 2.0}};
  auto c = arm_chain_build(spec);
  SUBCASE("equal chains") {
    auto r = arm_lemma_check(c, c);
    CHECK(r.consistent);
    CHECK(r.equality);
  }
  SUBCASE("longer green edge") {
    ChainSpec grown = spec;
    grown.lengths[1] = 0.8;
    auto r = arm_lemma_check(c, arm_chain_build(grown));
    CHECK(r.consistent);
    CHECK_FALSE(r.equality);
    CHECK(r.distance < r.distance_prime);
  }
  SUBCASE("larger green angle") {
    ChainSpec grown = spec;
    grown.angles[2] = 2.3;
    auto r = arm_lemma_check(c, arm_chain_build(grown));
    CHECK(r.consistent);
    CHECK(r.distance < r.distance_prime);
  }
  SUBCASE("hypothesis and compatibility failures") {
    ChainSpec shrunk = spec;
    shrunk.lengths[1] = 0.45;
    CHECK(code_of([&] { arm_lemma_check(c, arm_chain_build(shrunk)); }) == ErrorCode::HypothesisViolated);
    ChainSpec other_black = spec;
    other_black.lengths[0] = 0.9;
    CHECK(code_of([&] { arm_lemma_check(c, arm_chain_build(other_black)); }) == ErrorCode::HypothesisViolated);
    ChainSpec colors{{Color::Black, Color::Black, Color::Black, Color::Black}, {0.8, 0.5, 1.1, 0.9}, {1.8, 1.8, 2.0}};
    CHECK(code_of([&] { arm_lemma_check(c, arm_chain_build(colors)); }) == ErrorCode::IncompatibleChains);
  }
  SUBCASE("random valid pairs") {
    Rng rng(31);
    int rejections = 0;
    for (int i = 0; i < 500; ++i) {
      auto s = random_arm_pair(rng);
      rejections += s.rejections;
      auto r = arm_lemma_check(s.value.first, s.value.second);
      CHECK(r.consistent);
    }
    MESSAGE("arm pair rejections: " << rejections);
  }
}

TEST_CASE("four vertex labels") {
  SUBCASE("identical and isometric polygons") {
    auto p = greenblack_from_hyperideal(symmetric_triangle(1.0));
    auto r = four_vertex_labels(p, p);
    CHECK(r.sign_changes == 0);
    for (auto l : r.labels) CHECK(l == Label::None);
    // Rotating the support lines is an isometry.
    HyperidealPolygonSpec rotated;
    for (double a : {0.4, 0.4 + 2 * pi / 3, 0.4 + 4 * pi / 3}) rotated.normals.push_back(support_line(a, 1.0));
    CHECK(four_vertex_labels(p, greenblack_from_hyperideal(rotated)).sign_changes == 0);
  }
  SUBCASE("rhombi with equal sides") {
    auto p = testing::rhombus(0.6, 0.9), q = testing::rhombus(0.9, 0.6);
    auto r = four_vertex_labels(p, q);
    CHECK(r.sign_changes == 4);
    // The vertex nearer the center has the larger angle.
    CHECK(label_char(r.labels[0]) == '+');
    CHECK(label_char(r.labels[2]) == '-');
  }
  SUBCASE("right-angled octagons with equal black sides") {
    double b = 1.528;
    auto p = testing::right_angled_octagon(b, 1.4), q = testing::right_angled_octagon(b, 1.65);
    CHECK(validate_greenblack(p, 1e-8).empty());
    CHECK(validate_greenblack(q, 1e-8).empty());
    auto r = four_vertex_labels(p, q, 1e-8);
    CHECK(r.sign_changes >= 4);
  }
  SUBCASE("errors") {
    auto p = testing::rhombus(0.6, 0.9);
    auto q = testing::rhombus(0.6, 1.0);
    CHECK(code_of([&] { four_vertex_labels(p, q); }) == ErrorCode::NotBlackEdgeCongruent);
    auto hex = greenblack_from_hyperideal(symmetric_triangle(1.0));
    CHECK(code_of([&] { four_vertex_labels(p, hex); }) == ErrorCode::IncompatibleChains);
  }
  CHECK(cyclic_sign_changes({Label::Plus, Label::None, Label::Minus, Label::Plus, Label::None}) == 2);
}
