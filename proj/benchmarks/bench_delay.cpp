#include <benchmark/benchmark.h>

#include "mbwave/analysis.hpp"
#include "mbwave/delay_profile.hpp"

using namespace mbwave;

namespace {

DelayParams make_params(double mu1, double mu2, double tau) {
    DelayParams d;
    d.gain_now = mu1;
    d.gain_delayed = mu2;
    d.delay = tau;
    d.history_weight = 1.0;
    return d;
}

} // namespace

static void BM_DelaySlopeCold(benchmark::State& state) {
    const DomainGeometry g(0.5);
    const double y = double(state.range(0));
    for (auto _ : state) {
        state.PauseTiming();
        DelayProfile p(g, make_params(0.5, 0.5, 0.5), presets::dirichlet("dsine"),
                       presets::history("cosine"));
        state.ResumeTiming();
        benchmark::DoNotOptimize(p.slope(y));
    }
}
BENCHMARK(BM_DelaySlopeCold)->Arg(10)->Arg(100);

static void BM_DelaySlopeMemoised(benchmark::State& state) {
    const DomainGeometry g(0.5);
    DelayProfile p(g, make_params(0.5, 0.5, 0.5), presets::dirichlet("dsine"),
                   presets::history("cosine"));
    p.freeze(100.0);
    double y = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(p.slope(y));
        y += 0.0137;
        if (y > 90.0) y = 1.0;
    }
}
BENCHMARK(BM_DelaySlopeMemoised);

static void BM_DelayEnergy(benchmark::State& state) {
    const DomainGeometry g(0.5);
    DelayProfile p(g, make_params(2.0, 1.0, 1.0), presets::dirichlet("dsine"),
                   presets::history("cosine"));
    const double t = double(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(energy(p, t));
}
BENCHMARK(BM_DelayEnergy)->Arg(1)->Arg(5);
