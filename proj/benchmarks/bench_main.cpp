// Microbenchmarks for the hot paths: dispersion integrals, pole search,
// Volterra stepping and the oracle eigensolve.

#include "routersim/dynamics.hpp"
#include "routersim/oracle.hpp"
#include "routersim/spectral.hpp"
#include "routersim/spectrum.hpp"

#include <benchmark/benchmark.h>

using namespace routersim;

namespace {

const DimensionlessModel& pair_model() {
    static const DimensionlessModel m = reduce(diamond_waveguide(2, 10e-9, 1.05));
    return m;
}

const DimensionlessModel& triple_model() {
    static const DimensionlessModel m = reduce(diamond_waveguide(3, 10.5e-9, 1.0));
    return m;
}

void BM_DispersionIntegral(benchmark::State& state) {
    const double varpi = -0.01 * static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dispersion_integral(triple_model(), varpi, DispersionOrder::first));
    }
}
BENCHMARK(BM_DispersionIntegral)->Arg(1)->Arg(30)->Arg(200);

void BM_FindBoundStates(benchmark::State& state) {
    const DimensionlessModel& m = state.range(0) == 2 ? pair_model() : triple_model();
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_bound_states(m, 1.0));
    }
}
BENCHMARK(BM_FindBoundStates)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_MemoryKernel(benchmark::State& state) {
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(memory_kernel(triple_model(), t));
        t += 0.01;
    }
}
BENCHMARK(BM_MemoryKernel);

void BM_Volterra(benchmark::State& state) {
    const IntegratorOptions opts{0.01, static_cast<double>(state.range(0)), false};
    const Eigen::VectorXcd c0 = excite_first(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_nonmarkovian(pair_model(), 1.05, c0, opts));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Volterra)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNSquared);

void BM_OracleEigensolve(benchmark::State& state) {
    const DiscretizedSystem sys = build_discretized(pair_model(), 1.05, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_energies(sys));
    }
}
BENCHMARK(BM_OracleEigensolve)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
