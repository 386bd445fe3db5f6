#include "sqw/fft.hpp"

#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

static void BM_Fft2DForwardInverse(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const sqw::Fft2D fft(n, n);
    std::vector<std::complex<double>> data(n * n, {1.0, 0.5});
    for (auto _ : state) {
        fft.forward(data);
        fft.inverse(data);
        benchmark::DoNotOptimize(data.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n));
}
BENCHMARK(BM_Fft2DForwardInverse)->Arg(128)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

// Non power of two lengths take the Bluestein path.
static void BM_Fft1DBluestein(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const sqw::Fft1D fft(n);
    std::vector<std::complex<double>> data(n, {1.0, 0.0});
    for (auto _ : state) {
        fft.forward(data);
        benchmark::DoNotOptimize(data.data());
    }
}
BENCHMARK(BM_Fft1DBluestein)->Arg(1000)->Arg(1024);
