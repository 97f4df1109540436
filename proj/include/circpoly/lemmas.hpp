#pragma once

// Numeric harnesses that check the green-black lemmas on concrete
// configurations, plus seeded generators of valid configurations.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "circpoly/greenblack.hpp"
#include "circpoly/random.hpp"

namespace circpoly {

struct HarnessResult {
  bool holds = true;
  // Worst slack of the checked inequality; negative means it failed.
  double margin = 0.0;
  bool equality = false;
  std::string detail;
};

// Line whose left side contains the origin, at distance `distance` from it,
// perpendicular to the unit direction at `angle`.
Vec3 support_line(double angle, double distance);

// Hyperbolic translation by s along the oriented line; points keep their
// signed distance to the line.
Vec3 flow_along(const Vec3& line_normal, const Vec3& p, double s);

// Points h(t) of the hypercycle at signed distance `offset` from the line,
// with h(0) the foot of the perpendicular from p.  Checks that |p h(t)|
// strictly increases in |t| on both sides for `samples` steps up to t_max.
HarnessResult hypercycle_monotonicity_check(const Vec3& line_normal, const Vec3& p, double offset, int samples = 64,
                                            double t_max = 3.0);

// Region bounded by the perpendiculars k (at x = -half_width) and l (at
// x = +half_width) to the x-axis and the segment m between them, above m.
struct RegionFlowConfig {
  double half_width = 1.0;
  Vec3 b, c, B, C;

  Vec3 k() const;
  Vec3 l() const;
  Vec3 m() const { return Vec3(0.0, 1.0, 0.0); }
};

// Throws HypothesisViolated when the configuration is not admissible.
HarnessResult region_flow_check(const RegionFlowConfig& cfg, double tol = kDefaultTol);

// For every green edge, golden-section minimization (tolerance 1e-10) of
// the distance to each other vertex, and to each other green edge; the
// minimizing path must meet the green edges at pi/2 within angle_tol.
HarnessResult containment_check(const GreenBlackPolygon& p, double angle_tol = 1e-6);

// Minimizer of a unimodal function on [lo, hi].
double golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-10);

template <class T>
struct Sampled {
  T value;
  int rejections = 0;
};

// Random support lines in counterclockwise order; not necessarily proper.
HyperidealPolygonSpec random_hyperideal_spec(Rng& rng, int n, double r_lo = 0.2, double r_hi = 2.0);

// Proper random green-black polygon with 3..8 support lines.
Sampled<GreenBlackPolygon> random_greenblack_polygon(Rng& rng, int budget = 1000);

// Random convex polygon whose edges with both end angles at most pi/2 are
// green (never two in a row): a relaxed green-black polygon.
Sampled<GreenBlackPolygon> random_relaxed_polygon(Rng& rng, int budget = 1000);

// Chain c cut from a random polygon and a chain c' with some green lengths
// and green angles increased; both satisfy the arm hypotheses.
Sampled<std::pair<GreenBlackChain, GreenBlackChain>> random_arm_pair(Rng& rng, int budget = 1000);

Sampled<RegionFlowConfig> random_region_flow(Rng& rng, int budget = 1000);

}  // namespace circpoly
