#include <benchmark/benchmark.h>

#include "aqc/aqc.hpp"

using namespace aqc;

static void BM_LindbladFock(benchmark::State& state) {
    const auto p = SimParams::landau_zener(1.0, 0.3, 10.0, 0.1, 0.5, 21);
    const auto cutoff = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        double n = 0.0;
        lindblad_fock_evolve(p, cutoff,
                             [&](std::size_t, double, const FockDensity& rho) {
                                 n = rho.mean_excitation();
                             });
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_LindbladFock)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_GaussianOverlap(benchmark::State& state) {
    const auto s = GaussianState::squeezed_vacuum(0.5);
    for (auto _ : state) benchmark::DoNotOptimize(gaussian_overlap(s));
}
BENCHMARK(BM_GaussianOverlap);
