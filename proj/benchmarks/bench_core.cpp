#include <benchmark/benchmark.h>

#include "coopcast/algos.hpp"
#include "coopcast/broadcast.hpp"
#include "coopcast/convert.hpp"
#include "coopcast/net.hpp"

using namespace coopcast;

namespace {

Network make_net(int n, double alpha) {
  PlacementSpec spec{UniformDiskPlacement{n, 1.0}, 42};
  return sample_placement(spec, alpha, SourceRule::Fixed(0));
}

void BM_GreedyFilling(benchmark::State& state) {
  const Network net = make_net(static_cast<int>(state.range(0)), 2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(greedy_filling(net));
}
BENCHMARK(BM_GreedyFilling)->Arg(50)->Arg(200)->Arg(1000);

void BM_Convert(benchmark::State& state) {
  const Network net = make_net(static_cast<int>(state.range(0)), 2.0);
  const Schedule coop = greedy_filling(net);
  for (auto _ : state)
    benchmark::DoNotOptimize(convert(net, coop, /*verify=*/false));
}
BENCHMARK(BM_Convert)->Arg(50)->Arg(200)->Arg(1000);

void BM_CheckCooperative(benchmark::State& state) {
  const Network net = make_net(static_cast<int>(state.range(0)), 2.0);
  const Schedule coop = greedy_filling(net);
  for (auto _ : state)
    benchmark::DoNotOptimize(check_cooperative(net, coop));
}
BENCHMARK(BM_CheckCooperative)->Arg(200)->Arg(1000);

void BM_MaxFeasibleL(benchmark::State& state) {
  const GridNetwork grid =
      build_grid(static_cast<int>(state.range(0)), 1.0, 0, 2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(max_feasible_L(grid, true));
}
BENCHMARK(BM_MaxFeasibleL)->Arg(10)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
