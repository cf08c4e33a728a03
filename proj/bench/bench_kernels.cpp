// SPDX-License-Identifier: Apache-2.0
// Serial reference against the OpenMP kernel for each hot loop.
#include <benchmark/benchmark.h>

#include "cokernel_lab/curves.hpp"
#include "cokernel_lab/montecarlo.hpp"
#include "cokernel_lab/submodules.hpp"

using namespace cokernel_lab;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_SubmoduleScan(benchmark::State& state)
{
    const auto m = realize(LocalRingSpec(Poly::x(3), 2), Partition{2, 2, 2});
    for (auto _ : state)
        benchmark::DoNotOptimize(count_submodules_explicit(m, mode(state)));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_SubmoduleScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CokernelSampling(benchmark::State& state)
{
    SampleConfig cfg{RingSpec::local(Poly::x(3), 2), 8, 20000, 42};
    cfg.workers = 4;
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_cokernels(cfg, mode(state)).total);
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * cfg.trials));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_CokernelSampling)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveMoment(benchmark::State& state)
{
    const RingSpec r = RingSpec::local(Poly::x(3), 2);
    SampleConfig cfg{r, 2};
    cfg.mode = SampleMode::Exhaustive;
    cfg.workers = 4;
    const ModuleType a(r, {Partition{1}});
    for (auto _ : state)
        benchmark::DoNotOptimize(empirical_moment(cfg, a, mode(state)).value);
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_ExhaustiveMoment)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CurveCensus(benchmark::State& state)
{
    CurveRunConfig cfg;
    cfg.q = 13;
    cfg.g = 3;
    cfg.trials = 200;
    cfg.seed = 7;
    cfg.workers = 4;
    cfg.conditions = {{parse_poly("X+1", 3), 0}};
    for (auto _ : state)
        benchmark::DoNotOptimize(curve_census(cfg, mode(state)).size());
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * cfg.trials));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_CurveCensus)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
