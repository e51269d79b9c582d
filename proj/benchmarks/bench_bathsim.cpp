#include <benchmark/benchmark.h>

#include <vector>

#include "spinbath/bathsim.hpp"

using namespace spinbath::bathsim;

static void BM_discretize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(discretize({0.5, 50.0, n, Scheme::linear}));
}
BENCHMARK(BM_discretize)->Arg(256)->Arg(2048);

static void BM_noise_trajectory(benchmark::State& state) {
  auto bath = discretize({0.5, 50.0, 256, Scheme::linear});
  auto init = sample_initial(bath, 1.0, 1, 0);
  std::vector<double> t(51);
  for (int i = 0; i < 51; ++i) t[i] = 0.2 * i;
  for (auto _ : state) benchmark::DoNotOptimize(noise_trajectory(bath, init, t));
}
BENCHMARK(BM_noise_trajectory);

static void BM_verify_fdr(benchmark::State& state) {
  auto bath = discretize({0.5, 50.0, 256, Scheme::linear});
  std::vector<double> t(51);
  for (int i = 0; i < 51; ++i) t[i] = 0.2 * i;
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_fdr(bath, 1.0, 5000, t, 42, threads));
}
BENCHMARK(BM_verify_fdr)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_integrate_64modes(benchmark::State& state) {
  auto bath = discretize({0.5, 20.0, 64, Scheme::linear});
  auto init = sample_initial(bath, 1.0, 1, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate(bath, 1.0, init, 1e-3, 10000));
}
BENCHMARK(BM_integrate_64modes)->Unit(benchmark::kMillisecond);

static void BM_normal_modes(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto bath = discretize({0.5, 50.0, n, Scheme::linear});
  for (auto _ : state) benchmark::DoNotOptimize(normal_modes(bath, 1.0));
}
BENCHMARK(BM_normal_modes)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
