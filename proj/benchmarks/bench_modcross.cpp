#include "modcross/census.hpp"
#include "modcross/lseries.hpp"

#include <benchmark/benchmark.h>

using namespace modcross;

static void BM_ClassRepresentatives(benchmark::State& state) {
    const Int N = state.range(0);
    const Int D = N * N - 4;
    for (auto _ : state) benchmark::DoNotOptimize(class_representatives(D));
}
BENCHMARK(BM_ClassRepresentatives)->Arg(31)->Arg(101)->Arg(301)->Arg(1001);

static void BM_PellMin(benchmark::State& state) {
    const Int D = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(pell_min(D));
}
BENCHMARK(BM_PellMin)->Arg(21)->Arg(2644)->Arg(99997);

static void BM_LSeries(benchmark::State& state) {
    const Int D = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(l_one_chi_series(D, 1000000));
}
BENCHMARK(BM_LSeries)->Arg(5)->Arg(3477)->Arg(30621)->Unit(benchmark::kMillisecond);

static void BM_LSeriesCnf(benchmark::State& state) {
    const Int D = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(l_one_chi_cnf(D));
}
BENCHMARK(BM_LSeriesCnf)->Arg(5)->Arg(3477)->Arg(99221);

namespace {

std::pair<GeodesicClass, GeodesicClass> pair_of(long D1, long D2) {
    return {GeodesicClass(class_representatives(D1).front().front()),
            GeodesicClass(class_representatives(D2).front().front())};
}

}  // namespace

static void BM_IntersectionFast(benchmark::State& state) {
    auto [a, b] = pair_of(state.range(0), state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(crossing_orbits_fast(FareySegments(a), FareySegments(b)));
}
BENCHMARK(BM_IntersectionFast)->Args({5, 12})->Args({17, 33})->Args({221, 3477});

static void BM_IntersectionOracle(benchmark::State& state) {
    auto [a, b] = pair_of(state.range(0), state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(crossing_orbits_oracle(a, b));
}
BENCHMARK(BM_IntersectionOracle)->Args({5, 12})->Args({17, 33})->Unit(benchmark::kMillisecond);

static void BM_IOfN(benchmark::State& state) {
    const Int N = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(I_of_N(N));
}
BENCHMARK(BM_IOfN)->Arg(13)->Arg(59)->Arg(199)->Unit(benchmark::kMillisecond);

static void BM_PgtPi(benchmark::State& state) {
    const Real x(static_cast<long>(state.range(0)), 64);
    for (auto _ : state) benchmark::DoNotOptimize(pgt_pi(x));
}
BENCHMARK(BM_PgtPi)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_CensusRange(benchmark::State& state) {
    const std::vector<Int> Ns = n_family(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(census_records(Ns, {}, static_cast<unsigned>(state.range(1))));
}
BENCHMARK(BM_CensusRange)->Args({60, 1})->Args({60, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
