#include <benchmark/benchmark.h>

#include "mbwave/analysis.hpp"
#include "mbwave/profile.hpp"

using namespace mbwave;

static void BM_SlopeAcrossIntervals(benchmark::State& state) {
    const DomainGeometry g(0.5);
    const auto sol = self_similar_solution(SelfSimilarKind::Example1, 0.5);
    const NeumannProfile p(g, 0.7, sol.data);
    double y = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(p.slope(y));
        y += 0.37;
        if (y > 200.0) y = 1.0;
    }
}
BENCHMARK(BM_SlopeAcrossIntervals);

static void BM_EnergyQuadrature(benchmark::State& state) {
    const DomainGeometry g(0.5);
    const auto sol = self_similar_solution(SelfSimilarKind::Example1, 0.5);
    const NeumannProfile p(g, sol.gain, sol.data);
    const double t = double(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(energy(p, t));
}
BENCHMARK(BM_EnergyQuadrature)->Arg(1)->Arg(10);

static void BM_StateEvaluation(benchmark::State& state) {
    const DomainGeometry g(0.5);
    const NeumannProfile p(g, 0.8, presets::neumann("sine"));
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(p.state(x, 3.0));
        x += 0.013;
        if (x > 2.4) x = 0.0;
    }
}
BENCHMARK(BM_StateEvaluation);
