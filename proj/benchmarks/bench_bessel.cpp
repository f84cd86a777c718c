#include <benchmark/benchmark.h>

#include "qnmlab/bessel.hpp"

using namespace qnmlab;

static void BM_riccati_xi(benchmark::State& state) {
    const int l = int(state.range(0));
    const cplx z(7.3, -2.1);
    for (auto _ : state) benchmark::DoNotOptimize(riccati_xi(l, z));
}
BENCHMARK(BM_riccati_xi)->Arg(1)->Arg(8)->Arg(32);

static void BM_sph_jn_damped(benchmark::State& state) {
    // downward-recurrence regime, as hit on PML paths
    const int lmax = int(state.range(0));
    const cplx z(2.0, 14.0);
    std::vector<cplx> j(lmax + 1);
    for (auto _ : state) {
        sph_jn(lmax, z, j.data());
        benchmark::DoNotOptimize(j.data());
    }
}
BENCHMARK(BM_sph_jn_damped)->Arg(4)->Arg(16);

BENCHMARK_MAIN();
