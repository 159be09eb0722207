// Serial reference loops against the OpenMP builds of the same kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "conevortex/kernels.hpp"
#include "conevortex/scattering.hpp"
#include "conevortex/specfun.hpp"

using namespace conevortex;

namespace {

std::vector<kernels::cdouble> coeffs(long n) {
  std::vector<kernels::cdouble> c(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) c[i] = std::polar(1.0 / (1.0 + i), 0.37 * i);
  return c;
}

std::vector<double> grid(long n) {
  std::vector<double> phi(static_cast<std::size_t>(n));
  for (long j = 0; j < n; ++j) phi[j] = 2 * std::numbers::pi * j / n;
  return phi;
}

void BM_ModeSeriesSerial(benchmark::State& state) {
  const auto c = coeffs(state.range(0));
  const auto phi = grid(1441);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mode_series_serial(c, -state.range(0) / 2, phi));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 1441);
}

void BM_ModeSeriesParallel(benchmark::State& state) {
  const auto c = coeffs(state.range(0));
  const auto phi = grid(1441);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mode_series_parallel(c, -state.range(0) / 2, phi));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 1441);
}

// One Dirichlet coefficient per mode, the expensive part of the core amplitude.
kernels::cdouble dirichlet_term(long n, double x) {
  return specfun::jh_ratio(std::abs(static_cast<double>(n) - 0.3) / 0.75, x);
}

void BM_ModeBlockSerial(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  auto term = [x](long n) { return dirichlet_term(n, x); };
  const int count = static_cast<int>(4 * x + 64);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mode_block_serial(term, -count / 2, 1, count));
}

void BM_ModeBlockParallel(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  auto term = [x](long n) { return dirichlet_term(n, x); };
  const int count = static_cast<int>(4 * x + 64);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mode_block_parallel(term, -count / 2, 1, count));
}

void BM_CoreAmplitudeGrid(benchmark::State& state) {
  scattering::ScatterConfig c;
  c.eta = 0.25;
  c.flux_ratio = 0.3;
  c.r_c = static_cast<double>(state.range(0));
  const auto phi = grid(721);
  for (auto _ : state) benchmark::DoNotOptimize(scattering::amplitude_on_grid(c, phi, scattering::Component::Core));
}

}  // namespace

BENCHMARK(BM_ModeSeriesSerial)->Arg(256)->Arg(2048)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ModeSeriesParallel)->Arg(256)->Arg(2048)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_ModeBlockSerial)->Arg(50)->Arg(400)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ModeBlockParallel)->Arg(50)->Arg(400)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_CoreAmplitudeGrid)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
