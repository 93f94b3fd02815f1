#include <benchmark/benchmark.h>

#include "netelastic/generators.hpp"
#include "netelastic/metrics.hpp"
#include "netelastic/robustness.hpp"
#include "netelastic/throughput.hpp"

using namespace netelastic;

static void BM_HomogeneousGilbert(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = gen_gilbert(n, 9.0 / static_cast<double>(n), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(throughput_dijkstra_homogeneous(g, {}, ThroughputDetail::totals));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HomogeneousGilbert)->RangeMultiplier(2)->Range(125, 1000)->Complexity();

static void BM_HomogeneousMesh(benchmark::State& state) {
  const Graph g = gen_mesh(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(throughput_dijkstra_homogeneous(g, {}, ThroughputDetail::totals));
  }
}
BENCHMARK(BM_HomogeneousMesh)->Arg(100)->Arg(400);

static void BM_HeterogeneousPA(benchmark::State& state) {
  const Graph g = gen_preferential_attachment(static_cast<std::size_t>(state.range(0)), 2, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(throughput_dijkstra_heterogeneous(g, {}, ThroughputDetail::totals));
  }
}
BENCHMARK(BM_HeterogeneousPA)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_LpSmall(benchmark::State& state) {
  const Graph g = gen_watts_strogatz(static_cast<std::size_t>(state.range(0)), 4, 0.2, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(throughput_lp(g, {}, ThroughputDetail::totals));
  }
}
BENCHMARK(BM_LpSmall)->Arg(10)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_Betweenness(benchmark::State& state) {
  const Graph g = gen_preferential_attachment(static_cast<std::size_t>(state.range(0)), 2, 11);
  for (auto _ : state) benchmark::DoNotOptimize(betweenness(g));
}
BENCHMARK(BM_Betweenness)->Arg(1000);

static void BM_ElasticityBatched(benchmark::State& state) {
  const Graph g = gen_gilbert(300, 0.03, 1);
  AttackStrategy attack;
  attack.kind = AttackKind::highest_degree;
  attack.batch = 10;
  for (auto _ : state) benchmark::DoNotOptimize(elasticity(g, attack, {}));
}
BENCHMARK(BM_ElasticityBatched)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
