#include <benchmark/benchmark.h>

#include <numbers>

#include "ising_qfi/asymptotics.hpp"
#include "ising_qfi/exact_oracle.hpp"
#include "ising_qfi/fermion_core.hpp"
#include "ising_qfi/product_opt.hpp"

using namespace ising_qfi;

static void BM_generator_spectrum(benchmark::State& state) {
    const ModelParams p{static_cast<int>(state.range(0)), 1.0, 0.7, 20.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(generator_spectrum(p, Target::J).sum());
}
BENCHMARK(BM_generator_spectrum)->Arg(64)->Arg(512)->Arg(4096);

static void BM_g_optimal(benchmark::State& state) {
    const double g = state.range(0) / 100.0;
    for (auto _ : state) benchmark::DoNotOptimize(g_optimal(g));
}
BENCHMARK(BM_g_optimal)->Arg(50)->Arg(99)->Arg(200);

static void BM_integrated_generator(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const ModelParams p{N, 1.0, 1.0, 3.1};
    const MatrixModel model{ModelKind::FermionCyclic, N};
    for (auto _ : state)
        benchmark::DoNotOptimize(integrated_generator(p, Target::B, model).matrix.sum());
}
BENCHMARK(BM_integrated_generator)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_cached_product_variance(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const ModelParams p{N, 1.0, 1.0, 20.0};
    const EvolvedGenerator gen(p, Target::J, MatrixModel{ModelKind::SpinOpen, N});
    const std::vector<double> th(N, std::numbers::pi / 3), ph(N, 0.4);
    for (auto _ : state) benchmark::DoNotOptimize(gen.variance(make_product_state(th, ph)));
}
BENCHMARK(BM_cached_product_variance)->Arg(6)->Arg(9);

BENCHMARK_MAIN();
