#include <benchmark/benchmark.h>

#include <cmath>

#include "maxpoly/leastsq.hpp"
#include "maxpoly/nodes.hpp"
#include "maxpoly/remez.hpp"

namespace {

using namespace maxpoly;

void BM_GenerateNodes(benchmark::State& state) {
  const auto w = WeightSpec::preset("UC");
  const int M = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(NodeSet::from_weight(w, M));
  state.SetComplexityN(M);
}
BENCHMARK(BM_GenerateNodes)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_SolveSubinterval(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const int N = M * 3 / 5;
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("OC"), M);
  RemezOptions o;
  o.variant = state.range(1) ? Variant::second : Variant::first;
  int iters = 0;
  for (auto _ : state) {
    const auto s = solve_subinterval(nodes, N, M * 2 / 5, o);
    iters = s.trace.iterations;
    benchmark::DoNotOptimize(s.poly);
  }
  state.counters["iterations"] = iters;
}
BENCHMARK(BM_SolveSubinterval)->ArgsProduct({{100, 250, 500}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_ComputeB(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("C1"), M);
  for (auto _ : state) benchmark::DoNotOptimize(compute_B(nodes, M / 2));
}
BENCHMARK(BM_ComputeB)->Arg(40)->Arg(80)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_ConditionNumber(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("U"), M);
  const int N = static_cast<int>(std::ceil(std::sqrt(M)));
  for (auto _ : state) benchmark::DoNotOptimize(condition_number_inf(nodes, N));
}
BENCHMARK(BM_ConditionNumber)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
