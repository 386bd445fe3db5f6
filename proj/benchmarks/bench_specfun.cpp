#include "sqw/specfun.hpp"

#include <benchmark/benchmark.h>

static void BM_AiryAi(benchmark::State& state) {
    double x = -20.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sqw::airy_ai(x));
        x = x > 20.0 ? -20.0 : x + 0.013;
    }
}
BENCHMARK(BM_AiryAi);

static void BM_AiryTransformHg(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    double y = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sqw::airy_transform_hg(m, 0.8, y));
        y = y > 3.0 ? -3.0 : y + 0.01;
    }
}
BENCHMARK(BM_AiryTransformHg)->Arg(0)->Arg(3);
