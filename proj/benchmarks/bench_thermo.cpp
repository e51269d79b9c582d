#include <benchmark/benchmark.h>

#include "spinbath/thermo.hpp"

using spinbath::susceptibility::OhmicBath;

static void BM_free_energy(benchmark::State& state) {
  OhmicBath bath(1.0, 0.5);
  const double theta = std::pow(10.0, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spinbath::thermo::free_energy(bath, theta));
}
BENCHMARK(BM_free_energy)->Arg(-3)->Arg(0)->Arg(2);

static void BM_specific_heat_weak_coupling(benchmark::State& state) {
  // near-delta spectral weight: the resonance breakpoints do the work
  OhmicBath bath(1.0, 1e-3);
  for (auto _ : state)
    benchmark::DoNotOptimize(spinbath::thermo::specific_heat(bath, 0.4));
}
BENCHMARK(BM_specific_heat_weak_coupling);

static void BM_specific_heat_overdamped(benchmark::State& state) {
  OhmicBath bath(1.0, 100.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(spinbath::thermo::specific_heat(bath, 1.0));
}
BENCHMARK(BM_specific_heat_overdamped);

static void BM_transition_temperature(benchmark::State& state) {
  OhmicBath bath(1.0, 0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(spinbath::thermo::transition_temperature(bath));
}
BENCHMARK(BM_transition_temperature)->Unit(benchmark::kMillisecond);

static void BM_thermo_scan(benchmark::State& state) {
  OhmicBath bath(1.0, 0.5);
  spinbath::thermo::ScanGrid grid(1e-3, 1e3, 50);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        spinbath::thermo::thermo_scan(bath, grid, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_thermo_scan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
