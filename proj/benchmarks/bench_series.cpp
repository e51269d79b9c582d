#include <benchmark/benchmark.h>

#include "spinbath/series.hpp"

using spinbath::series::GArgument;
using spinbath::susceptibility::OhmicBath;

static void BM_g_arctan(benchmark::State& state) {
  GArgument y(std::complex<double>(0.05, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(spinbath::series::g_arctan(y));
}
BENCHMARK(BM_g_arctan);

static void BM_g_highT_cisi(benchmark::State& state) {
  // |y| controls how many aux_f terms the acceleration consumes
  const double mag = std::pow(10.0, -static_cast<double>(state.range(0)));
  GArgument y(std::complex<double>(0.3 * mag, mag));
  for (auto _ : state) benchmark::DoNotOptimize(spinbath::series::g_highT_cisi(y));
}
BENCHMARK(BM_g_highT_cisi)->Arg(0)->Arg(1);

static void BM_g_lowT(benchmark::State& state) {
  GArgument y(std::complex<double>(8.0, 20.0));
  for (auto _ : state) benchmark::DoNotOptimize(spinbath::series::g_lowT(y, 6));
}
BENCHMARK(BM_g_lowT);

static void BM_cv_lowT(benchmark::State& state) {
  OhmicBath bath(1.0, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(spinbath::series::cv_lowT(bath, 0.01, 3));
}
BENCHMARK(BM_cv_lowT);
