#include <benchmark/benchmark.h>

#include <cmath>

#include "gexlab/gheat.hpp"
#include "gexlab/pengsum.hpp"
#include "gexlab/sampling.hpp"

using namespace gexlab;

static void BM_OneStepOperator(benchmark::State& state) {
  const auto set = referenceSet();
  const auto f = GridFunction::sample({0.5, -state.range(0), state.range(0)},
                                      [](double x) { return std::abs(x); });
  for (auto _ : state) benchmark::DoNotOptimize(oneStepOperator(set, f));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}
BENCHMARK(BM_OneStepOperator)->Arg(512)->Arg(4096);

static void BM_SumExpectation(benchmark::State& state) {
  const auto set = referenceSet();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalizedSumExpectation(set, n, [](double x) { return std::abs(x); }));
  }
}
BENCHMARK(BM_SumExpectation)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_SolveGHeat(benchmark::State& state) {
  const GParams g(0.5, 1.0);
  const double dx = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gNormalExpectation(g, PhiSpec::abs(), {dx, 6.0}));
  }
}
BENCHMARK(BM_SolveGHeat)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_Oracle(benchmark::State& state) {
  const auto set = referenceSet();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bruteForceAdaptedOracle(set, n, [](double x) { return std::abs(x); }));
  }
}
BENCHMARK(BM_Oracle)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
