#include "deepwave/identities.hpp"
#include "deepwave/solver2d.hpp"
#include "deepwave/spectral.hpp"
#include "deepwave/wave_field.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

using namespace deepwave;

namespace {

const solver::ConformalWave& reference_wave() {
  static const solver::ConformalWave wave = [] {
    solver::SolverConfig config;
    config.N = 512;
    config.L = 50.0;
    config.continuation_steps = 5;
    const auto params = solver::wave_params(1.0, 1.0, 0.9 * solver::minimum_speed(1.0, 1.0));
    return solver::continuation(params, config);
  }();
  return wave;
}

spectral::Samples bump(int n, double half_length) {
  spectral::Samples u(n);
  for (int j = 0; j < n; ++j) {
    const double x = -half_length + 2.0 * half_length * j / n;
    u(j) = 1.0 / (1.0 + x * x);
  }
  return u;
}

void BM_Hilbert(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const spectral::Transform fft(n, 100.0);
  const auto u = bump(n, 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(fft.hilbert(u));
  state.SetComplexityN(n);
}
BENCHMARK(BM_Hilbert)->RangeMultiplier(2)->Range(256, 8192)->Complexity();

void BM_BernoulliResidual(benchmark::State& state) {
  const auto& wave = reference_wave();
  const spectral::Transform fft(wave.N, wave.L);
  for (auto _ : state) benchmark::DoNotOptimize(solver::bernoulli_residual(wave.params, fft, wave.y));
}
BENCHMARK(BM_BernoulliResidual);

void BM_LinearizedResidual(benchmark::State& state) {
  const auto& wave = reference_wave();
  const spectral::Transform fft(wave.N, wave.L);
  const auto dy = bump(wave.N, wave.L);
  for (auto _ : state)
    benchmark::DoNotOptimize(solver::linearized_residual(wave.params, fft, wave.y, dy));
}
BENCHMARK(BM_LinearizedResidual);

void BM_NewtonWarmStart(benchmark::State& state) {
  const auto& wave = reference_wave();
  solver::SolverConfig config;
  config.N = wave.N;
  config.L = wave.L;
  for (auto _ : state) benchmark::DoNotOptimize(solver::solve_wave(wave.params, config, wave.y));
}
BENCHMARK(BM_NewtonWarmStart)->Unit(benchmark::kMillisecond);

void BM_FieldGradient(benchmark::State& state) {
  const auto series = std::make_shared<ConformalSeries>(reference_wave());
  const WaveField field(series);
  Point x(2);
  x << 7.0, -3.0;
  for (auto _ : state) benchmark::DoNotOptimize(field.gradient(x));
}
BENCHMARK(BM_FieldGradient);

void BM_ShellFluxA(benchmark::State& state) {
  const auto series = std::make_shared<ConformalSeries>(reference_wave());
  const WaveField field(series);
  const WaveSurface surface(series);
  for (auto _ : state)
    benchmark::DoNotOptimize(identities::shell_flux_A(field, surface, 30.0, reference_wave().params));
}
BENCHMARK(BM_ShellFluxA)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
