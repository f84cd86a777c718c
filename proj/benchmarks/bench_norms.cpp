#include <benchmark/benchmark.h>

#include "qnmlab/mie.hpp"
#include "qnmlab/norms.hpp"

using namespace qnmlab;

namespace {
const SphereGeometry g{500e-9, Material::dielectric(2.0), Material::vacuum()};
const MieMode mode =
    find_mie_qnm(g, 1, MiePol::TM, cplx(1.337930111e15, -2.113620391e14));
} // namespace

static void BM_pml_norm(benchmark::State& state) {
    PmlMap map;
    map.R = 600e-9;
    for (auto _ : state) benchmark::DoNotOptimize(pml_norm(mode, g, map));
}
BENCHMARK(BM_pml_norm)->Unit(benchmark::kMillisecond);

static void BM_m_norm_exact(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(m_norm(mode, g, 2e-6, DerivScheme::Exact));
}
BENCHMARK(BM_m_norm_exact)->Unit(benchmark::kMillisecond);

static void BM_find_mie_qnm(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            find_mie_qnm(g, 1, MiePol::TM, cplx(1.34e15, -2.1e14)));
}
BENCHMARK(BM_find_mie_qnm)->Unit(benchmark::kMillisecond);
