#include <benchmark/benchmark.h>

#include <random>

#include "rmmcop/rmmcop.hpp"

namespace {

using namespace rmmcop;

void BM_EvalRmm(benchmark::State& state) {
  const RmmCopula c = rmm_preset("ex3b:delta=1/3");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> pts(2048);
  for (double& x : pts) x = unif(rng);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(c(pts[i & 2047], pts[(i + 1) & 2047]));
    i += 2;
  }
}
BENCHMARK(BM_EvalRmm);

void BM_BoundaryCurve(benchmark::State& state) {
  const RmmCopula c = rmm_preset("fig2-5");
  for (auto _ : state) benchmark::DoNotOptimize(boundary_curve(c, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BoundaryCurve)->Arg(101)->Arg(1001);

void BM_AcMass(benchmark::State& state) {
  const RmmCopula c = rmm_preset("ex3c:mu=1");
  for (auto _ : state) benchmark::DoNotOptimize(ac_mass(c));
}
BENCHMARK(BM_AcMass)->Unit(benchmark::kMillisecond);

void BM_SampleRmm(benchmark::State& state) {
  const RmmCopula c = rmm_preset("ex3b:delta=1/3");
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_rmm(c, static_cast<std::size_t>(state.range(0)), ++seed));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleRmm)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_EmpiricalBuild(benchmark::State& state) {
  const SampleSet s = sample_rmm(rmm_preset("pi"), static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(EmpiricalCopula(s.pairs));
}
BENCHMARK(BM_EmpiricalBuild)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_EmpiricalQuery(benchmark::State& state) {
  const EmpiricalCopula e(sample_rmm(rmm_preset("pi"), static_cast<std::size_t>(state.range(0)), 3).pairs);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(e(unif(rng), unif(rng)));
}
BENCHMARK(BM_EmpiricalQuery)->Arg(100000)->Arg(1000000);

void BM_RecoverAnalytic(benchmark::State& state) {
  const AnalyticEvaluator<RmmCopula> c(rmm_preset("tent"));
  for (auto _ : state) benchmark::DoNotOptimize(recover_generator(c));
}
BENCHMARK(BM_RecoverAnalytic)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
