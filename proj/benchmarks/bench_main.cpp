#include <benchmark/benchmark.h>

#include "ringgeom/dot_geometry.hpp"
#include "ringgeom/fourier.hpp"
#include "ringgeom/harness.hpp"
#include "ringgeom/simplices.hpp"

using namespace ringgeom;

namespace {

PointSet uniform_set(std::uint64_t n, unsigned d, std::uint64_t size) {
    const Modulus m(n);
    return PointSet::from_indices(m, d, sample_indices(space_size(m, d), size, 1, 0));
}

void BM_MuHistogram(benchmark::State& state) {
    const auto E = uniform_set(9, 5, static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(mu_histogram(E));
    const double pairs = static_cast<double>(E.size()) * static_cast<double>(E.size() + 1) / 2;
    state.counters["pairs/s"] = benchmark::Counter(pairs, benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_MuHistogram)->Arg(5000)->Arg(35000)->Unit(benchmark::kMillisecond);

void BM_ExactCensus(benchmark::State& state) {
    const auto E = uniform_set(9, 3, static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(census(E, 2, Metric::distance, CensusMode::exact, 1'000'000'000, 0));
}
BENCHMARK(BM_ExactCensus)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_SampledCensus(benchmark::State& state) {
    const auto E = uniform_set(9, 5, 40000);
    for (auto _ : state)
        benchmark::DoNotOptimize(census(E, 2, Metric::distance, CensusMode::sampled, static_cast<std::uint64_t>(state.range(0)), 1));
}
BENCHMARK(BM_SampledCensus)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_ForwardTransform(benchmark::State& state) {
    const unsigned d = static_cast<unsigned>(state.range(0));
    const auto f = indicator(uniform_set(9, d, 100));
    for (auto _ : state) benchmark::DoNotOptimize(forward_transform(f));
}
BENCHMARK(BM_ForwardTransform)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
