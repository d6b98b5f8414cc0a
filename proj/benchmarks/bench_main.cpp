#include <benchmark/benchmark.h>

#include "lowfroude/amplitude.hpp"
#include "lowfroude/ode.hpp"
#include "lowfroude/recurrence.hpp"
#include "lowfroude/singulant.hpp"

using namespace lowfroude;

static void BM_InnerSeparated(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(inner_separated({1, 3}, n));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_InnerSeparated)->Range(256, 2048)->Complexity(benchmark::oNSquared);

static void BM_InnerCoalescing(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(inner_coalescing({3, 24}, {5, 24}, 1.0, 1.0, 1, 2, n));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_InnerCoalescing)->Range(256, 2048)->Complexity(benchmark::oNSquared);

static void BM_OmegaCc(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(omega_cc({1, 6}, {1, 6}, 0.5, 0.5, 1, 2, 1600));
    }
}
BENCHMARK(BM_OmegaCc);

static void BM_FitDivergence(benchmark::State& state) {
    const CoeffSeq seq = inner_coalescing({3, 24}, {5, 24}, 1.0, 1.0, 1, 2, 1500);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_divergence(seq, 2, 500, 1500));
    }
}
BENCHMARK(BM_FitDivergence);

static void BM_ChiQuadrature(benchmark::State& state) {
    const ForcingSpec spec = SeparatedForcing(0.75, 0.25, {1, 6}, {1, 6});
    for (auto _ : state) {
        benchmark::DoNotOptimize(chi_to(spec, 0, {1.0, 0.0}, 0.0, 1e-10));
    }
}
BENCHMARK(BM_ChiQuadrature);

static void BM_StokesTrace(benchmark::State& state) {
    const ForcingSpec spec = SingleForcing(0.5, {1, 3});
    for (auto _ : state) {
        benchmark::DoNotOptimize(trace_stokes_line(spec, 0, 1e-3, 6.0));
    }
}
BENCHMARK(BM_StokesTrace);

static void BM_IntegratePhi(benchmark::State& state) {
    const ForcingSpec spec = SingleForcing(0.5, {1, 3});
    const double eps = 0.15;
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_phi(spec, eps, 1e-5, 30.0, 1e-11));
    }
}
BENCHMARK(BM_IntegratePhi);

BENCHMARK_MAIN();
