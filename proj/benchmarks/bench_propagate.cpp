#include "sqw/analytic.hpp"
#include "sqw/numeric.hpp"

#include <benchmark/benchmark.h>

static void BM_SplitStepRayleigh(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const sqw::Grid2D g(n, n, 8.0, 8.0);
    const auto psi0 = sqw::initial_field(sqw::ModeSpec::lg(1, 0), g);
    for (auto _ : state) {
        sqw::SplitStepPropagator p({g, 0.4, 32, 0.0, 2, 1}, psi0);
        p.advance(1.0);
        benchmark::DoNotOptimize(p.field());
    }
}
BENCHMARK(BM_SplitStepRayleigh)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_AnalyticField(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const sqw::Grid2D g(n, n, 8.0, 8.0);
    for (auto _ : state) benchmark::DoNotOptimize(sqw::propagated_field(sqw::ModeSpec::hg(2, 1), 0.4, 1.0, g));
}
BENCHMARK(BM_AnalyticField)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_KernelPropagate(benchmark::State& state) {
    const sqw::Grid2D g(64, 64, 8.0, 8.0);
    const auto psi0 = sqw::initial_field(sqw::ModeSpec::hg(0, 1), g);
    for (auto _ : state) benchmark::DoNotOptimize(sqw::kernel_propagate(psi0, 0.3, 1.5, 1));
}
BENCHMARK(BM_KernelPropagate)->Unit(benchmark::kMillisecond);
