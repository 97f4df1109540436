#pragma once

// Seeded randomized property suites.  Each trial draws from its own stream,
// trial_seed(seed, suite, trial), so results do not depend on how trials are
// scheduled; the serial and OpenMP runners give identical summaries.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "circpoly/cpolyhedron.hpp"
#include "circpoly/random.hpp"

namespace circpoly {

struct TrialContext {
  std::uint64_t seed = 0;  // already mixed for this trial
  int trial = 0;
  int trials = 0;
};

struct Measurement {
  double metric = 0.0;     // compared against the suite threshold
  bool violated = false;   // a failure no threshold can excuse
  std::string detail;
};

struct SuiteDef {
  std::string name;
  std::string metric;  // what `metric` measures, for reports
  int default_trials = 0;
  double threshold = 0.0;
  std::function<Measurement(const TrialContext&)> kernel;
};

// Sorted by name.
const std::vector<SuiteDef>& all_suites();
// Throws ParseError for an unknown name.
const SuiteDef& find_suite(std::string_view name);

enum class Schedule { Serial, Parallel };

struct SuiteResult {
  std::string name;
  std::string metric;
  int trials = 0;
  int failures = 0;
  double worst = 0.0;
  double threshold = 0.0;
  int first_failure = -1;  // lowest failing trial index
  std::string first_detail;

  bool passed() const { return failures == 0; }
};

SuiteResult run_suite(const SuiteDef& suite, std::uint64_t seed, int trials, double threshold,
                      Schedule schedule = Schedule::Parallel);

// Building blocks shared with the acceptance gate.

// Certifies cp against T(cp) for a random T; the metric is the circle
// residual, and a recovered map farther than map_tol from T is a violation.
Measurement rigidity_trial(const CPolyhedron& cp, Rng& rng, double map_tol = 1e-7);

// Largest deviation between the c-links of cp and of T(cp) over all vertices.
Measurement clink_invariance_trial(const CPolyhedron& cp, Rng& rng);

// Largest gap between black edge lengths and link-point distances, and
// between green complex angles and complex dihedral angles.
Measurement clink_identification(const CPolyhedron& cp);

}  // namespace circpoly
