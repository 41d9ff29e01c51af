#include <benchmark/benchmark.h>

#include "jch/hilbert.hpp"
#include "jch/model.hpp"
#include "jch/solver.hpp"
#include "jch/sweep.hpp"

namespace {

jch::ModelParams params() {
  jch::ModelParams p;
  p.delta = -0.8;
  p.hopping = 1.5;
  return p;
}

void BM_BuildHamiltonian(benchmark::State& state) {
  const jch::Basis basis(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(jch::build_hamiltonian(params(), basis));
  state.SetComplexityN(static_cast<long>(basis.dimension()));
}
BENCHMARK(BM_BuildHamiltonian)->RangeMultiplier(2)->Range(4, 256)->Complexity();

void BM_FullSpectrum(benchmark::State& state) {
  const auto h = jch::build_hamiltonian(params(), jch::Basis(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(jch::full_spectrum(h));
}
BENCHMARK(BM_FullSpectrum)->Arg(4)->Arg(12)->Arg(30)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_LanczosGround(benchmark::State& state) {
  const auto h = jch::build_hamiltonian(params(), jch::Basis(static_cast<int>(state.range(0))));
  jch::SolverOptions opts;
  opts.dense_threshold = 0;
  for (auto _ : state) benchmark::DoNotOptimize(jch::ground_state(h, opts));
}
BENCHMARK(BM_LanczosGround)->Arg(30)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_EvaluatePoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jch::evaluate_point(params(), n));
}
BENCHMARK(BM_EvaluatePoint)->Arg(4)->Arg(30)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
