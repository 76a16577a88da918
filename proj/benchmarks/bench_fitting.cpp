#include <benchmark/benchmark.h>

#include "aqc/aqc.hpp"

using namespace aqc;

static void BM_Table1(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(table1_report().datasets[0].summary.mean);
}
BENCHMARK(BM_Table1);

static void BM_LeastSquaresAlpha(benchmark::State& state) {
    const auto rows = table1_report().datasets[0].rows;
    for (auto _ : state) benchmark::DoNotOptimize(least_squares_alpha(rows));
}
BENCHMARK(BM_LeastSquaresAlpha);
