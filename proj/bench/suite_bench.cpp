#include <benchmark/benchmark.h>

#include "circpoly/hyperideal3d.hpp"
#include "circpoly/rigidity.hpp"
#include "circpoly/suite.hpp"

using namespace circpoly;

namespace {

// Argument: suite index in all_suites(); second argument selects the schedule.
void BM_Suite(benchmark::State& state) {
  const SuiteDef& def = all_suites()[static_cast<std::size_t>(state.range(0))];
  Schedule schedule = state.range(1) ? Schedule::Parallel : Schedule::Serial;
  int trials = std::min(def.default_trials, 1000);
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(def, kDefaultSeed, trials, def.threshold, schedule));
  state.SetLabel(def.name + (schedule == Schedule::Parallel ? " parallel" : " serial"));
  state.SetItemsProcessed(state.iterations() * trials);
}

void suite_args(benchmark::internal::Benchmark* b) {
  for (std::size_t i = 0; i < all_suites().size(); ++i)
    for (int parallel : {0, 1}) b->Args({static_cast<long>(i), parallel});
}

void BM_CertifyCongruence(benchmark::State& state) {
  CPolyhedron cp = dual_cpolyhedron(dodecahedron_fixture(0.65)).cp;
  Rng rng(7);
  CPolyhedron moved = moebius_image(cp, rng.moebius(1.5));
  for (auto _ : state) benchmark::DoNotOptimize(certify_congruence(cp, moved));
}

}  // namespace

BENCHMARK(BM_Suite)->Apply(suite_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CertifyCongruence)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
