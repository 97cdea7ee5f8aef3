#include <benchmark/benchmark.h>

#include "boltzmann/billiard.hpp"
#include "boltzmann/koopman.hpp"
#include "boltzmann/measure.hpp"
#include "boltzmann/sim.hpp"

namespace {

using namespace boltzmann;

Params with_beta(double beta) {
  Params p;
  p.beta = beta;
  return p;
}

void BM_MapState(benchmark::State& state) {
  const Params p = with_beta(static_cast<double>(state.range(0)) / 10.0);
  const auto samples = sample_billiard_states(p, 64, 7);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(map_state(p, samples[i++ % samples.size()].state));
  }
}
BENCHMARK(BM_MapState)->Arg(0)->Arg(5)->Arg(26);

void BM_Trajectory(benchmark::State& state) {
  const Params p = with_beta(2.6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(iterate_trajectory(p, {0.2, 0.8}, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_Trajectory)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_AllowedRegion(benchmark::State& state) {
  const Params p = with_beta(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_allowed_region(p, 40, 20));
  }
}
BENCHMARK(BM_AllowedRegion)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  const Params p = with_beta(2.6);
  const Partition part = make_partition(compute_allowed_region(p, 20, 10));
  const auto rule = make_rule(QuadratureKind::GaussLegendre, static_cast<std::size_t>(state.range(0)));
  const auto map = billiard_point_map(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble(part, rule, map, 1));
  }
}
BENCHMARK(BM_Assemble)->Arg(9)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_Jacobian(benchmark::State& state) {
  const Params p = with_beta(0.5);
  const auto samples = sample_billiard_states(p, 16, 11);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& s = samples[i++ % samples.size()];
    benchmark::DoNotOptimize(jacobian_det(p, s.state, s.theta_star));
  }
}
BENCHMARK(BM_Jacobian)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
