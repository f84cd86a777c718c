#include <benchmark/benchmark.h>

#include "qnmlab/fdfd.hpp"

using namespace qnmlab;

static Assembled make_system(int N) {
    const SlabGeometry geom{2.0, 1e-6};
    const Grid1D grid{-3e-6, 3e-6, N};
    const PmlProfile1D pml{2e-6, cplx(2.0, 2.0), 0};
    return assemble(geom, grid, pml);
}

static void BM_assemble(benchmark::State& state) {
    const int N = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(make_system(N));
}
BENCHMARK(BM_assemble)->Arg(200)->Arg(800);

static void BM_eigensolve_values(benchmark::State& state) {
    const Assembled sys = make_system(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(eigensolve(sys, EigenContent::ValuesOnly));
}
BENCHMARK(BM_eigensolve_values)->Arg(100)->Arg(200)
    ->Unit(benchmark::kMillisecond);

static void BM_eigensolve_full(benchmark::State& state) {
    const Assembled sys = make_system(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(eigensolve(sys));
}
BENCHMARK(BM_eigensolve_full)->Arg(100)->Arg(200)
    ->Unit(benchmark::kMillisecond);
