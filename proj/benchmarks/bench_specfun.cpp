#include <benchmark/benchmark.h>

#include <complex>

#include "spinbath/specfun.hpp"

using spinbath::specfun::complex;

static void BM_aux_f_series_branch(benchmark::State& state) {
  const complex z(0.4, 1.1);
  for (auto _ : state) benchmark::DoNotOptimize(spinbath::specfun::aux_f(z));
}
BENCHMARK(BM_aux_f_series_branch);

static void BM_aux_f_cf_branch(benchmark::State& state) {
  const complex z(12.0, 5.0);
  for (auto _ : state) benchmark::DoNotOptimize(spinbath::specfun::aux_f(z));
}
BENCHMARK(BM_aux_f_cf_branch);

static void BM_aux_f_near_imaginary_axis(benchmark::State& state) {
  const complex z(0.05, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spinbath::specfun::aux_f(z));
}
BENCHMARK(BM_aux_f_near_imaginary_axis)->Arg(10)->Arg(100);

static void BM_cisi_real(benchmark::State& state) {
  const complex z(3.0, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(spinbath::specfun::cisi(z));
}
BENCHMARK(BM_cisi_real);

static void BM_zeta_int(benchmark::State& state) {
  for (auto _ : state) {
    for (int s = 2; s <= 30; ++s) benchmark::DoNotOptimize(spinbath::specfun::zeta_int(s));
  }
}
BENCHMARK(BM_zeta_int);
