// Serial reference vs OpenMP kernels on the two grid sweeps and the
// trajectory sampler.

#include "bathtub/perimeter.hpp"
#include "bathtub/shortrun.hpp"
#include "bathtub/sweep.hpp"

#include <benchmark/benchmark.h>

namespace {

const bathtub::CityParameters kCity{};

void BM_SensitivitySerial(benchmark::State& state)
{
    const bathtub::GridAxis eta{0.55, 1.0, static_cast<std::size_t>(state.range(0))};
    const bathtub::GridAxis xi{1.0, 1.3, 4};
    for (auto _ : state) benchmark::DoNotOptimize(bathtub::sensitivity_grid_serial(kCity, eta, xi));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(eta.steps * xi.steps));
}

void BM_SensitivityParallel(benchmark::State& state)
{
    const bathtub::GridAxis eta{0.55, 1.0, static_cast<std::size_t>(state.range(0))};
    const bathtub::GridAxis xi{1.0, 1.3, 4};
    for (auto _ : state) benchmark::DoNotOptimize(bathtub::sensitivity_grid(kCity, eta, xi));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(eta.steps * xi.steps));
}

void BM_CostGridSerial(benchmark::State& state)
{
    const bathtub::GridAxis ns{50.0, 500.0, static_cast<std::size_t>(state.range(0))};
    const bathtub::GridAxis xi{1.0, 1.3, 16};
    for (auto _ : state) benchmark::DoNotOptimize(bathtub::shortrun_cost_grid_serial(kCity, 1.0, ns, xi));
}

void BM_CostGridParallel(benchmark::State& state)
{
    const bathtub::GridAxis ns{50.0, 500.0, static_cast<std::size_t>(state.range(0))};
    const bathtub::GridAxis xi{1.0, 1.3, 16};
    for (auto _ : state) benchmark::DoNotOptimize(bathtub::shortrun_cost_grid(kCity, 1.0, ns, xi));
}

void BM_Trajectory(benchmark::State& state)
{
    const auto p = bathtub::apply_av_effects(kCity, {});
    const auto eq = bathtub::solve_shortrun(300.0, p);
    for (auto _ : state)
        benchmark::DoNotOptimize(bathtub::build_trajectory(eq, p, static_cast<std::size_t>(state.range(0))));
}

} // namespace

BENCHMARK(BM_SensitivitySerial)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SensitivityParallel)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CostGridSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CostGridParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Trajectory)->Arg(2001)->Arg(100001)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
