#include <benchmark/benchmark.h>

#include "firefight/monitor.hpp"
#include "firefight/search.hpp"
#include "firefight/strategies.hpp"
#include "firefight/wall_plan.hpp"

using namespace firefight;

namespace {

void BM_FreeSpread(benchmark::State& state) {
  const auto topo = static_cast<Topology>(state.range(1));
  for (auto _ : state) {
    FireState s(topo, std::vector<Point>{{0, 0}});
    for (std::int64_t k = 0; k < state.range(0); ++k) s.spread();
    benchmark::DoNotOptimize(s.burnt().size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FreeSpread)
    ->ArgsProduct({{50, 100, 200}, {static_cast<int>(Topology::Cartesian), static_cast<int>(Topology::Strong)}})
    ->Unit(benchmark::kMillisecond);

void BM_Containment(benchmark::State& state) {
  const auto m = state.range(0), r = state.range(1);
  const auto plan = wall_plan(m, r);
  const auto b = Budget::containment_default(m);
  for (auto _ : state) {
    ContainmentStrategy strat(plan);
    const auto t = run(FireState(Topology::Strong, plan.source()), b, strat, plan.table.end_round[3]);
    benchmark::DoNotOptimize(t.final_round);
  }
}
BENCHMARK(BM_Containment)->Args({1, 1})->Args({2, 2})->Args({3, 3})->Unit(benchmark::kMillisecond);

void BM_Monitor(benchmark::State& state) {
  GreedyStrategy greedy;
  const auto b = Budget::periodic({2, 1});
  const auto trace = run(FireState(Topology::Cartesian, std::vector<Point>{{0, 0}}), b, greedy, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_invariants(trace, b).ok());
}
BENCHMARK(BM_Monitor)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Exhaustive(benchmark::State& state) {
  SearchConfig cfg;
  cfg.budget = Budget::periodic({2, 1});
  cfg.horizon = state.range(0);
  cfg.symmetry = state.range(1) != 0;
  for (auto _ : state) {
    const auto r = exhaustive_search(cfg);
    state.counters["nodes"] = static_cast<double>(r.nodes);
  }
}
BENCHMARK(BM_Exhaustive)->Args({2, 0})->Args({2, 1})->Args({3, 1})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
