#include "mixbound/brw.hpp"
#include "mixbound/chain.hpp"
#include "mixbound/hitting.hpp"
#include "mixbound/spectral.hpp"

#include <benchmark/benchmark.h>

namespace {

using mixbound::ChainFamilySpec;
using mixbound::HitSolver;

void BM_Decompose(benchmark::State& state) {
  const auto kernel = mixbound::build_family(ChainFamilySpec::torus(2, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(mixbound::decompose(kernel));
  state.SetComplexityN(kernel.size());
}
BENCHMARK(BM_Decompose)->Arg(8)->Arg(16)->Arg(24)->Complexity();

void BM_HitTimes(benchmark::State& state, HitSolver solver) {
  const auto kernel = mixbound::build_family(ChainFamilySpec::cycle(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(mixbound::hit_times(kernel, solver));
  state.SetComplexityN(kernel.size());
}
BENCHMARK_CAPTURE(BM_HitTimes, fundamental, HitSolver::FundamentalMatrix)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK_CAPTURE(BM_HitTimes, restricted, HitSolver::RestrictedColumns)->Arg(16)->Arg(32)->Arg(64);

void BM_HitTimesBirthDeath(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto kernel = mixbound::build_family(ChainFamilySpec::dlp(n, 0.5, 0.1, n));
  for (auto _ : state) benchmark::DoNotOptimize(mixbound::hit_times(kernel, HitSolver::BirthDeath));
}
BENCHMARK(BM_HitTimesBirthDeath)->Arg(64)->Arg(128)->Arg(256);

void BM_BranchingHit(benchmark::State& state) {
  const mixbound::ChainAnalysis a(mixbound::build_family(ChainFamilySpec::torus(2, 8)));
  const auto cfg = mixbound::BRWConfig::for_chain(a, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(mixbound::simulate_hit(a.kernel, 0, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BranchingHit)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_BranchingIntersection(benchmark::State& state) {
  const mixbound::ChainAnalysis a(mixbound::build_family(ChainFamilySpec::hypercube(6)));
  const auto cfg = mixbound::BRWConfig::for_chain(a, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(mixbound::simulate_intersection(a.kernel, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BranchingIntersection)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
