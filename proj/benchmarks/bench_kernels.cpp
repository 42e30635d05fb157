#include <benchmark/benchmark.h>

#include <vector>

#include "ljsde/init_sampler.hpp"
#include "ljsde/integrator.hpp"
#include "ljsde/particles.hpp"
#include "ljsde/rng.hpp"

namespace {

using namespace ljsde;

SystemSpec bench_system(std::size_t n) {
  SystemSpec s;
  s.n = n;
  s.d = 2;
  s.sigma = 0.5;
  return s;
}

Configuration bench_start(const SystemSpec& s) {
  return grid_configuration(s.n, s.d, default_grid_spacing(*s.potential));
}

void BM_SystemDrift(benchmark::State& state) {
  const SystemSpec s = bench_system(static_cast<std::size_t>(state.range(0)));
  const Configuration x = bench_start(s);
  for (auto _ : state) {
    DriftField f = system_drift(x, s, 0.1);
    benchmark::DoNotOptimize(f);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SystemDrift)->RangeMultiplier(2)->Range(4, 256)->Complexity(benchmark::oNSquared);

void BM_GlobalLaplacian(benchmark::State& state) {
  const SystemSpec s = bench_system(static_cast<std::size_t>(state.range(0)));
  const Configuration x = bench_start(s);
  const RegularizedLJ reg(*s.potential, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(global_laplacian(x, reg));
}
BENCHMARK(BM_GlobalLaplacian)->RangeMultiplier(4)->Range(4, 256);

void BM_EmStep(benchmark::State& state) {
  const SystemSpec s = bench_system(static_cast<std::size_t>(state.range(0)));
  Configuration x = bench_start(s);
  Rng rng(7);
  std::vector<double> noise(s.n * s.d);
  std::size_t k = 0;
  for (auto _ : state) {
    for (auto& z : noise) z = rng.normal();
    x = em_step(x, s, 0.1, 1e-5, noise, k++);
  }
}
BENCHMARK(BM_EmStep)->RangeMultiplier(4)->Range(4, 256);

}  // namespace
BENCHMARK_MAIN();
