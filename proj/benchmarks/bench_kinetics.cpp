#include <benchmark/benchmark.h>

#include "aqc/aqc.hpp"

using namespace aqc;

static void BM_StepperLandauZener(benchmark::State& state) {
    const auto p = SimParams::landau_zener(1.0, 0.01, 10.0, 0.02, 1.0,
                                           static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_n_stepper(p).final().n);
}
BENCHMARK(BM_StepperLandauZener)->Arg(2)->Arg(1000)->Arg(100000);

static void BM_QuadratureLandauZener(benchmark::State& state) {
    const auto p = SimParams::landau_zener(1.0, 0.01, 10.0, 0.02, 1.0, 2);
    for (auto _ : state) benchmark::DoNotOptimize(solve_n_quadrature(p, 20.0));
}
BENCHMARK(BM_QuadratureLandauZener);

// Power-law bath: the rate varies, so the quadrature nests a cumulative integral.
static void BM_QuadratureNested(benchmark::State& state) {
    const auto p = SimParams::make(GapSchedule::landau_zener(1.0, 0.05, 10.0),
                                   MassSchedule::constant(1.0),
                                   BathSpec::power_law(0.02, 2.0, 1e300, 1.0), 2);
    for (auto _ : state) benchmark::DoNotOptimize(solve_n_quadrature(p, 20.0));
}
BENCHMARK(BM_QuadratureNested);

static void BM_ThermalOccupation(benchmark::State& state) {
    double x = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(thermal_occupation(x, 1.0));
        x = x < 30.0 ? x * 1.01 : 1e-3;
    }
}
BENCHMARK(BM_ThermalOccupation);
