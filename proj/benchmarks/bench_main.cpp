#include "nasearch/analytic.hpp"
#include "nasearch/propagator.hpp"
#include "nasearch/specfun.hpp"
#include "nasearch/sweep.hpp"

#include <benchmark/benchmark.h>

#include <complex>
#include <numbers>

using namespace nasearch;

namespace {

const cplx kRay = std::polar(1.0, std::numbers::pi / 4);

void BM_GammaComplex(benchmark::State& state) {
    const cplx z{0.3, 4.7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(complex_gamma(z));
    }
}
BENCHMARK(BM_GammaComplex);

// Small |z|: double-precision Kummer sums.
void BM_PcfSeriesDouble(benchmark::State& state) {
    const cplx nu{0.0, -0.5};
    const cplx z = 2.0 * kRay;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pcf_d(nu, z));
    }
}
BENCHMARK(BM_PcfSeriesDouble);

// |z| near the switch radius on the decaying ray: the 113-bit fallback.
void BM_PcfSeriesExtended(benchmark::State& state) {
    const cplx nu{0.0, -0.1};
    const cplx z{7.5, 0.3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(pcf_d(nu, z));
    }
}
BENCHMARK(BM_PcfSeriesExtended);

void BM_PcfAsymptotic(benchmark::State& state) {
    const cplx nu{0.0, -0.5};
    const cplx z = -12.0 * kRay;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pcf_d(nu, z));
    }
}
BENCHMARK(BM_PcfAsymptotic);

void BM_LimitProbability(benchmark::State& state) {
    const double a = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(algII_limit_prob(100, a, 4.5));
    }
}
BENCHMARK(BM_LimitProbability)->Arg(2)->Arg(10)->Arg(250);

void BM_SweepGrid(benchmark::State& state) {
    GridSpec spec;
    spec.n_a = static_cast<int>(state.range(0));
    spec.n_b = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep_ab(spec, 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_SweepGrid)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SimulateAlgorithm1(benchmark::State& state) {
    const ScheduleI s(state.range(0), 1.0, 1.0);
    const auto grid = uniform_grid(3 * s.tau(), 2000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_I(s, grid));
    }
}
BENCHMARK(BM_SimulateAlgorithm1)->Arg(50)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_SimulateAlgorithm2(benchmark::State& state) {
    const ScheduleII s(1'000'000, static_cast<double>(state.range(0)), 4.5);
    const auto grid = uniform_grid(20.0, 2000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_II(s, grid));
    }
}
BENCHMARK(BM_SimulateAlgorithm2)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_MobileIntegration(benchmark::State& state) {
    const ScheduleI s(500, 1.0, 0.5);
    const auto grid = uniform_grid(2 * s.tau(), 200);
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_mobile(s, MobilePair{0.0, 1.0, 0.0}, grid));
    }
}
BENCHMARK(BM_MobileIntegration)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
