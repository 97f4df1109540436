#include "circpoly/suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "circpoly/hyperideal3d.hpp"
#include "circpoly/lemmas.hpp"
#include "circpoly/rigidity.hpp"

namespace circpoly {

namespace {

constexpr int kResampleBudget = 1000;
constexpr double kRapidity = 1.5;

Measurement ok(double metric, std::string detail = {}) { return Measurement{metric, false, std::move(detail)}; }
Measurement bad(double metric, std::string detail) { return Measurement{metric, true, std::move(detail)}; }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Fixture used by trial `trial` of the polyhedral suites: three regular
// duals in rotation with a fresh random hull every fourth trial.
CPolyhedron polyhedral_fixture(const TrialContext& ctx) {
  static const std::vector<CPolyhedron> fixed = [] {
    std::vector<CPolyhedron> v;
    v.push_back(dual_cpolyhedron(cube_fixture(0.65)).cp);
    v.push_back(dual_cpolyhedron(cube_fixture(0.8)).cp);
    v.push_back(dual_cpolyhedron(dodecahedron_fixture(0.65)).cp);
    return v;
  }();
  int slot = ctx.trial % 4;
  if (slot < 3) return fixed[static_cast<std::size_t>(slot)];
  return dual_cpolyhedron(random_hull(ctx.seed)).cp;
}

Measurement invdist_definitions(const TrialContext& ctx) {
  Rng rng(ctx.seed);
  for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
    OrientedCircle a = rng.circle(), b = rng.circle();
    PlanarOrientedCircle pa, pb;
    try {
      pa = a.to_planar();
      pb = b.to_planar();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NearPoleDegeneracy) continue;
      throw;
    }
    double chart = inv_dist_crossratio(pa, pb);
    double sphere = inv_dist_spherical(a.to_cap(), b.to_cap());
    return ok(std::abs(chart - sphere), "d = " + fmt(sphere));
  }
  throw Error(ErrorCode::RejectionBudgetExceeded, "no pair away from the pole");
}

Measurement moebius_invariance(const TrialContext& ctx) {
  Rng rng(ctx.seed);
  OrientedCircle a = rng.circle(), b = rng.circle();
  MoebiusMap t = rng.moebius(kRapidity);
  double before = inv_dist(a, b);
  double after = inv_dist(moebius_apply_circle(t, a), moebius_apply_circle(t, b));
  double drift = std::abs(before - after) / std::max(1.0, std::abs(before));
  double antisymmetry = std::abs(inv_dist(a.reversed(), b) + before);
  if (antisymmetry > 1e-12) return bad(drift, "orientation flip off by " + fmt(antisymmetry));
  return ok(drift);
}

Measurement ortho_circle_residual(const TrialContext& ctx) {
  Rng rng(ctx.seed);
  for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
    std::vector<OrientedCircle> c{rng.circle(), rng.circle(), rng.circle()};
    OrientedCircle o;
    try {
      o = ortho_circle(c[0], c[1], c[2]);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Coaxial || e.code() == ErrorCode::NoRealOrthoCircle) continue;
      throw;
    }
    double residual = 0.0;
    for (const auto& ci : c) residual = std::max(residual, std::abs(eta(o.lorentz(), ci.lorentz())));
    return ok(residual);
  }
  throw Error(ErrorCode::RejectionBudgetExceeded, "no admissible triple");
}

Measurement theta_roundtrip(const TrialContext& ctx) {
  double x = ctx.trials > 1 ? -10.0 + 20.0 * ctx.trial / (ctx.trials - 1) : -10.0;
  return ok(std::abs(cos_theta(acos_theta(x)) - x), "x = " + fmt(x));
}

Measurement three_coaxial(const TrialContext& ctx) {
  Rng rng(ctx.seed);
  auto s = random_three_coaxial(rng);
  const auto& k = s.value;
  if (!lemma_three_coaxial_check(k.o, k.a, k.b, k.c)) return bad(1.0, "C segregated from both A+ and B+");
  return ok(0.0);
}

Measurement from_harness(const HarnessResult& r) {
  if (!r.holds) return bad(-r.margin, r.detail);
  return ok(-r.margin, r.detail);
}

Measurement hypercycle(const TrialContext& ctx) {
  Rng rng(ctx.seed);
  Vec3 line = support_line(rng.uniform(0.0, 2.0 * std::numbers::pi), rng.uniform(0.0, 1.5));
  double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
  Vec3 p = geodesic_point(origin_point(), Vec3(std::cos(heading), std::sin(heading), 0.0), rng.uniform(0.0, 2.0));
  return from_harness(hypercycle_monotonicity_check(line, p, rng.uniform(-1.5, 1.5), 32, 2.5));
}

Measurement region_flow(const TrialContext& ctx) {
  Rng rng(ctx.seed);
  RegionFlowConfig cfg = random_region_flow(rng).value;
  bool equality_fixture = ctx.trial % 10 == 0;
  if (equality_fixture) {
    cfg.B = cfg.b;
    cfg.C = cfg.c;
  }
  HarnessResult r = region_flow_check(cfg);
  if (equality_fixture && !r.equality) return bad(-r.margin, "unmoved points not reported as equality");
  return from_harness(r);
}

Measurement containment(const TrialContext& ctx) {
  Rng rng(ctx.seed);
  GreenBlackPolygon p = ctx.trial % 2 == 0 ? random_greenblack_polygon(rng).value : random_relaxed_polygon(rng).value;
  return from_harness(containment_check(p, 1e-6));
}

Measurement arm_lemma(const TrialContext& ctx) {
  Rng rng(ctx.seed);
  auto pair = random_arm_pair(rng).value;
  bool equality_fixture = ctx.trial % 10 == 0;
  const GreenBlackChain& other = equality_fixture ? pair.first : pair.second;
  ArmLemmaResult r = arm_lemma_check(pair.first, other);
  double gap = r.distance - r.distance_prime;
  if (!r.consistent) return bad(gap, r.detail);
  if (equality_fixture && !r.equality) return bad(gap, "identical chains not reported as equality");
  return ok(gap);
}

Measurement scan(const TrialContext& ctx) {
  static const std::vector<AbstractPolyhedron> graphs{cube_polyhedron(), octahedron_polyhedron(),
                                                      dodecahedron_fixture(0.65).combinatorics()};
  Rng rng(ctx.seed);
  const AbstractPolyhedron& p = graphs[static_cast<std::size_t>(ctx.trial) % graphs.size()];
  std::vector<EdgeSign> signs(p.edge_count());
  bool any = false;
  while (!any) {
    for (auto& s : signs) {
      s = static_cast<EdgeSign>(rng.integer(0, 2));
      any = any || s != EdgeSign::None;
    }
  }
  int v = combinatorial_scan(signs, p);
  int changes = sign_changes_around(signs, p, v);
  if (changes > 2) return bad(changes, "scan returned " + p.name(v) + " with " + std::to_string(changes) + " changes");
  return ok(changes);
}

Measurement hull_duals(const TrialContext& ctx) {
  DualResult d = dual_cpolyhedron(random_hull(ctx.seed));
  if (!d.cp.convex()) return bad(d.tangency_residual, "dual not convex: " + d.cp.convexity.detail);
  if (!d.cp.consistently_oriented()) return bad(d.tangency_residual, "dual not case i");
  for (int v = 0; v < static_cast<int>(d.cp.poly.vertex_count()); ++v) {
    CLink link = c_link(d.cp, v);
    if (!link.ok()) return bad(d.tangency_residual, "improper link at " + d.cp.poly.name(v));
  }
  return ok(d.tangency_residual);
}

Measurement rigidity(const TrialContext& ctx) {
  Rng rng(ctx.seed);
  return rigidity_trial(polyhedral_fixture(ctx), rng);
}

Measurement clink_invariance(const TrialContext& ctx) {
  Rng rng(ctx.seed);
  CPolyhedron cp = polyhedral_fixture(ctx);
  Measurement m = clink_invariance_trial(cp, rng);
  if (m.violated) return m;
  Measurement id = clink_identification(cp);
  if (id.violated) return id;
  return ok(std::max(m.metric, id.metric));
}

std::vector<SuiteDef> make_suites() {
  std::vector<SuiteDef> s{
      {"arm_lemma", "free distance minus primed free distance", 500, 1e-9, arm_lemma},
      {"clink_invariance", "c-link deviation under a random map", 100, 1e-8, clink_invariance},
      {"combinatorial_scan", "sign changes at the scanned vertex", 10000, 2.0, scan},
      {"containment", "negated right-angle slack", 500, 1e-9, containment},
      {"hypercycle", "negated monotonicity slack", 500, 1e-9, hypercycle},
      {"invdist_definitions", "chart vs sphere inversive distance", 10000, 1e-9, invdist_definitions},
      {"moebius_invariance", "relative inversive distance drift", 10000, 1e-9, moebius_invariance},
      {"ortho_circle", "max |<O, C_i>|", 1000, 1e-10, ortho_circle_residual},
      {"random_hull_duals", "tangency circle residual", 20, 1e-9, hull_duals},
      {"region_flow", "negated |BC| - |bc| slack", 500, 1e-9, region_flow},
      {"rigidity", "circle residual of the certified map", 40, 1e-8, rigidity},
      {"theta_roundtrip", "|cos_theta(acos_theta(x)) - x|", 2001, 1e-12, theta_roundtrip},
      {"three_coaxial", "conclusion failures", 500, 0.0, three_coaxial},
  };
  std::sort(s.begin(), s.end(), [](const SuiteDef& a, const SuiteDef& b) { return a.name < b.name; });
  return s;
}

}  // namespace

const std::vector<SuiteDef>& all_suites() {
  static const std::vector<SuiteDef> suites = make_suites();
  return suites;
}

const SuiteDef& find_suite(std::string_view name) {
  for (const auto& s : all_suites())
    if (s.name == name) return s;
  throw Error(ErrorCode::ParseError, "unknown suite '" + std::string(name) + "'");
}

SuiteResult run_suite(const SuiteDef& suite, std::uint64_t seed, int trials, double threshold, Schedule schedule) {
  std::vector<Measurement> out(static_cast<std::size_t>(std::max(trials, 0)));
  auto run_one = [&](int i) {
    TrialContext ctx{trial_seed(seed, suite.name, static_cast<std::uint64_t>(i)), i, trials};
    try {
      out[static_cast<std::size_t>(i)] = suite.kernel(ctx);
    } catch (const std::exception& e) {
      out[static_cast<std::size_t>(i)] = bad(0.0, e.what());
    }
  };
  if (schedule == Schedule::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < trials; ++i) run_one(i);
  } else {
    for (int i = 0; i < trials; ++i) run_one(i);
  }

  // Reduced in trial order so the summary does not depend on scheduling.
  SuiteResult r;
  r.name = suite.name;
  r.metric = suite.metric;
  r.trials = trials;
  r.threshold = threshold;
  for (int i = 0; i < trials; ++i) {
    const Measurement& m = out[static_cast<std::size_t>(i)];
    bool failed = m.violated || !(m.metric <= threshold);
    if (i == 0 || m.metric > r.worst || std::isnan(m.metric)) r.worst = m.metric + 0.0;  // no negative zero in reports
    if (!failed) continue;
    if (r.failures++ == 0) {
      r.first_failure = i;
      r.first_detail = m.detail;
    }
  }
  return r;
}

Measurement rigidity_trial(const CPolyhedron& cp, Rng& rng, double map_tol) {
  MoebiusMap t0 = rng.moebius(kRapidity);
  CongruenceVerdict v = certify_congruence(cp, moebius_image(cp, t0));
  if (!v.congruent) return bad(v.residual, "not congruent: " + v.witness.detail);
  double gap = projective_distance(v.map, t0);
  if (gap > map_tol) return bad(v.residual, "recovered map off by " + fmt(gap));
  return ok(v.residual);
}

Measurement clink_invariance_trial(const CPolyhedron& cp, Rng& rng) {
  CPolyhedron img = moebius_image(cp, rng.moebius(kRapidity));
  double worst = 0.0;
  for (int v = 0; v < static_cast<int>(cp.poly.vertex_count()); ++v) {
    LinkComparison cmp = compare_clinks(c_link(cp, v), c_link(img, v));
    if (cmp.relation != LinkRelation::Congruent)
      return bad(cmp.worst, "link at " + cp.poly.name(v) + " is " + std::string(link_relation_name(cmp.relation)));
    worst = std::max(worst, cmp.worst);
  }
  return ok(worst);
}

Measurement clink_identification(const CPolyhedron& cp) {
  double worst = 0.0;
  for (int v = 0; v < static_cast<int>(cp.poly.vertex_count()); ++v) {
    CLink link = c_link(cp, v);
    if (!link.ok()) return bad(0.0, "improper link at " + cp.poly.name(v));
    const GreenBlackPolygon& poly = link.polygon;
    const std::size_t m = link.faces.size();
    auto dihedral_at = [&](int junction) {
      return complex_dihedral(cp, link.faces[static_cast<std::size_t>(junction)],
                              link.faces[(static_cast<std::size_t>(junction) + 1) % m]);
    };
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const GBEdge& e = poly.edges[k];
      if (e.color == Color::Black) {
        int f = link.faces[static_cast<std::size_t>(e.source)];
        Vec3 s = link_point(cp.circles[cp.poly.succ(f, v)], cp.circles[v], cp.ortho[f]);
        Vec3 t = link_point(cp.circles[cp.poly.pred(f, v)], cp.circles[v], cp.ortho[f]);
        worst = std::max(worst, std::abs(e.length - hyp_distance(s, t)));
      } else {
        worst = std::max(worst, theta_distance(poly.element_angle(2 * k + 1), dihedral_at(e.source)));
      }
      const GBVertex& x = poly.vertices[k];
      if (x.color == Color::Green) worst = std::max(worst, theta_distance(x.angle, dihedral_at(x.source)));
    }
  }
  return ok(worst);
}

}  // namespace circpoly
