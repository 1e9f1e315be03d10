#include <benchmark/benchmark.h>

#include "trigokit/classifier.hpp"
#include "trigokit/generators.hpp"
#include "trigokit/spectral.hpp"

using namespace trigokit;

namespace {

GenResult make_crossing(int n) {
    CrossingSpec spec;
    spec.invariant_axis = 1;
    spec.f_axis = 2;
    spec.g_axis = 0;
    spec.f.values.resize(std::size_t(n));
    spec.g.values.resize(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        spec.f.values[std::size_t(i)] = i < n / 2 ? +1 : -1;
        spec.g.values[std::size_t(i)] = (i / 2) % 2 == 0 ? +1 : -1;
    }
    return gen_crossing(TorusGrid(n, 4, n), {1, 2, 3}, spec);
}

void BM_GenCrossing(benchmark::State& state) {
    const int n = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(make_crossing(n));
}
BENCHMARK(BM_GenCrossing)->Arg(16)->Arg(32)->Arg(64);

void BM_SaintVenantResidual(benchmark::State& state) {
    const int n = int(state.range(0));
    const GenResult r = make_crossing(n);
    for (auto _ : state) benchmark::DoNotOptimize(saint_venant_residual(r.strain));
}
BENCHMARK(BM_SaintVenantResidual)->Arg(16)->Arg(32)->Arg(64);

void BM_Reconstruct(benchmark::State& state) {
    const int n = int(state.range(0));
    const GenResult r = make_crossing(n);
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct_displacement(r.strain));
}
BENCHMARK(BM_Reconstruct)->Arg(16)->Arg(32);

void BM_Classify(benchmark::State& state) {
    const int n = int(state.range(0));
    const GenResult r = make_crossing(n);
    for (auto _ : state) benchmark::DoNotOptimize(classify(r.strain, {1, 2, 3}));
}
BENCHMARK(BM_Classify)->Arg(16)->Arg(32);

void BM_TwinTable(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(twin_table({1, 2, 3}));
}
BENCHMARK(BM_TwinTable);

} // namespace

BENCHMARK_MAIN();
