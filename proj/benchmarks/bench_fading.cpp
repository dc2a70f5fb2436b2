#include <benchmark/benchmark.h>

#include <fading/composite.hpp>
#include <fading/special_fns.hpp>
#include <fading/validation.hpp>

using namespace fading;

namespace {

void BM_BesselI(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(bessel_i(1.3, x));
}
BENCHMARK(BM_BesselI)->Arg(5)->Arg(50)->Arg(300)->Arg(1000);

void BM_BesselK(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(bessel_k(7.3, x));
}
BENCHMARK(BM_BesselK)->Arg(1)->Arg(15)->Arg(50)->Arg(400);

void BM_GrossPoly(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bessel_i(1.0, 3.0, GrossPoly{n}));
}
BENCHMARK(BM_GrossPoly)->Arg(10)->Arg(30)->Arg(100);

void BM_OraclePdf(benchmark::State& state) {
    const CompositeSpec s = state.range(0) == 0 ? kappa_mu_gamma(1.0, 2.0, 1.4, 1.2) : kmu_extreme_gamma(1.5, 1.2, 0.8);
    for (auto _ : state) benchmark::DoNotOptimize(composite_envelope_pdf_numeric(1.0, s));
}
BENCHMARK(BM_OraclePdf)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_SeriesPdf(benchmark::State& state) {
    const CompositeSpec s = kappa_mu_gamma(1.0, 2.0, 1.4, 1.2);
    const SeriesConfig sc{static_cast<int>(state.range(0)), SeriesMode::renormalized};
    for (auto _ : state) benchmark::DoNotOptimize(kappa_mu_gamma_envelope_pdf_series(1.0, s, sc));
}
BENCHMARK(BM_SeriesPdf)->Arg(10)->Arg(30)->Unit(benchmark::kMicrosecond);

void BM_SampleComposite(benchmark::State& state) {
    const CompositeSpec s = kappa_mu_gamma(1.0, 2.0, 1.4, 1.2);
    RandomStream rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(sample_composite(s, rng));
}
BENCHMARK(BM_SampleComposite);

void BM_CdfTable(benchmark::State& state) {
    const CompositeSpec s = kmu_extreme_gamma(1.5, 1.2, 0.8);
    for (auto _ : state) {
        const CdfTable t(composite_density(s), std::sqrt(composite_mean_power(s)));
        benchmark::DoNotOptimize(t(1.0));
    }
}
BENCHMARK(BM_CdfTable)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
