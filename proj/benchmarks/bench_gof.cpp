#include <filesystem>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "gof/ingest.hpp"
#include "gof/normality_tests.hpp"
#include "gof/outlier_screen.hpp"

namespace {

const gof::Sample& pcb() {
    static const gof::Sample s = gof::ingest(std::filesystem::path(GOF_BENCH_FIXTURE_DIR) / "set2_pcb_logkow.txt", {});
    return s;
}

gof::Sample normal_sample(std::size_t n) {
    std::mt19937_64 rng(n);
    std::normal_distribution<double> d;
    std::vector<double> x(n);
    for (auto& v : x) v = d(rng);
    return gof::Sample::make(x);
}

void BM_DefaultBattery(benchmark::State& state) {
    const auto& s = pcb();
    const auto m = gof::fit_normal(s);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gof::run_battery(s, m, gof::BinningRule::DataplotWidth, 0.05));
    }
}
BENCHMARK(BM_DefaultBattery);

void BM_ExtendedBattery(benchmark::State& state) {
    const auto& s = pcb();
    const auto m = gof::fit_normal(s);
    const auto tests = gof::extended_tests();
    for (auto _ : state) {
        benchmark::DoNotOptimize(gof::run_battery(s, m, gof::BinningRule::DataplotWidth, 0.05, tests));
    }
}
BENCHMARK(BM_ExtendedBattery);

void BM_Screen(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(gof::screen(pcb(), 0.05, 5, gof::BinningRule::DataplotWidth));
    }
}
BENCHMARK(BM_Screen);

void BM_KolmogorovExact(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const double d = 0.8 / std::sqrt(static_cast<double>(n));
    for (auto _ : state) benchmark::DoNotOptimize(gof::kolmogorov_sf_exact(d, n));
}
BENCHMARK(BM_KolmogorovExact)->RangeMultiplier(4)->Range(16, 4096);

void BM_ShapiroWilk(benchmark::State& state) {
    const auto s = normal_sample(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(gof::shapiro_wilk(s.values()));
}
BENCHMARK(BM_ShapiroWilk)->RangeMultiplier(4)->Range(16, 4096);

}  // namespace

BENCHMARK_MAIN();
