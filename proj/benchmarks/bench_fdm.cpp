#include <benchmark/benchmark.h>

#include "mbwave/analysis.hpp"
#include "mbwave/oracle_fdm.hpp"

using namespace mbwave;

static void BM_FdmNeumann(benchmark::State& state) {
    const DomainGeometry g(0.5);
    const auto sol = self_similar_solution(SelfSimilarKind::Example1, 0.5);
    FdmGrid grid;
    grid.ny = int(state.range(0));
    grid.t_max = 1.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_fdm_neumann(g, sol.gain, sol.data, grid));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FdmNeumann)->Arg(128)->Arg(256)->Arg(512)->Complexity(benchmark::oNSquared);

static void BM_FdmDelay(benchmark::State& state) {
    const DomainGeometry g(0.5);
    DelayParams d;
    d.gain_now = 2.0;
    d.gain_delayed = 0.5;
    d.delay = 0.5;
    d.history_weight = 1.0;
    const auto smooth = presets::smooth_delay(0.5, 0.5, 2.0, 0.5);
    FdmGrid grid;
    grid.ny = int(state.range(0));
    grid.t_max = 1.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_fdm_delay(g, d, smooth.initial, smooth.history, grid));
}
BENCHMARK(BM_FdmDelay)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
