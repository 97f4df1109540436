#include <doctest.h>

#include <algorithm>
#include <set>

#include "circpoly/hyperideal3d.hpp"
#include "circpoly/suite.hpp"
#include "support.hpp"

using namespace circpoly;
using circpoly::testing::code_of;

namespace {

void check_same(const SuiteResult& a, const SuiteResult& b) {
  CHECK(a.name == b.name);
  CHECK(a.trials == b.trials);
  CHECK(a.failures == b.failures);
  CHECK(a.worst == b.worst);
  CHECK(a.first_failure == b.first_failure);
  CHECK(a.first_detail == b.first_detail);
}

}  // namespace

TEST_CASE("suite registry") {
  const auto& suites = all_suites();
  CHECK(suites.size() == 13);
  CHECK(std::is_sorted(suites.begin(), suites.end(),
                       [](const SuiteDef& a, const SuiteDef& b) { return a.name < b.name; }));
  std::set<std::string> names;
  for (const auto& s : suites) {
    names.insert(s.name);
    CHECK(s.default_trials > 0);
    CHECK(s.kernel);
  }
  CHECK(names.size() == suites.size());
  CHECK(find_suite("rigidity").name == "rigidity");
  CHECK(code_of([] { find_suite("nope"); }) == ErrorCode::ParseError);
}

TEST_CASE("trial streams do not depend on scheduling") {
  for (const auto& s : all_suites()) {
    int trials = std::min(s.default_trials, 24);
    SuiteResult serial = run_suite(s, kDefaultSeed, trials, s.threshold, Schedule::Serial);
    SuiteResult parallel = run_suite(s, kDefaultSeed, trials, s.threshold, Schedule::Parallel);
    INFO(s.name);
    check_same(serial, parallel);
    check_same(parallel, run_suite(s, kDefaultSeed, trials, s.threshold, Schedule::Parallel));
    CHECK(serial.passed());
  }
}

TEST_CASE("seeds and thresholds") {
  const SuiteDef& s = find_suite("invdist_definitions");
  SuiteResult a = run_suite(s, 1, 200, s.threshold);
  SuiteResult b = run_suite(s, 2, 200, s.threshold);
  CHECK(a.worst != b.worst);

  // A threshold below rounding error must produce reported failures.
  SuiteResult tight = run_suite(s, kDefaultSeed, 200, 1e-15);
  CHECK(tight.failures > 0);
  CHECK(tight.first_failure >= 0);
  CHECK_FALSE(tight.passed());

  // Kernel exceptions become failures with the message as detail.
  SuiteDef throwing{"throwing", "m", 5, 1.0, [](const TrialContext& ctx) -> Measurement {
                      if (ctx.trial == 3) throw Error(ErrorCode::HypothesisViolated, "boom");
                      return Measurement{0.0, false, {}};
                    }};
  SuiteResult t = run_suite(throwing, 0, 5, 1.0);
  CHECK(t.failures == 1);
  CHECK(t.first_failure == 3);
  CHECK(t.first_detail.find("boom") != std::string::npos);
}

TEST_CASE("theta grid covers the interval") {
  const SuiteDef& s = find_suite("theta_roundtrip");
  for (int i : {0, 1, 2}) {
    Measurement m = s.kernel(TrialContext{0, i, 3});
    CHECK(m.detail == std::string("x = ") + (i == 0 ? "-10" : i == 1 ? "0" : "10"));
  }
}

TEST_CASE("shared trial helpers") {
  CPolyhedron cp = dual_cpolyhedron(cube_fixture(0.65)).cp;
  Rng rng(8);
  Measurement r = rigidity_trial(cp, rng);
  CHECK_FALSE(r.violated);
  CHECK(r.metric < 1e-8);
  Measurement c = clink_invariance_trial(cp, rng);
  CHECK_FALSE(c.violated);
  CHECK(c.metric < 1e-8);
  Measurement id = clink_identification(cp);
  CHECK_FALSE(id.violated);
  CHECK(id.metric < 1e-9);
}
