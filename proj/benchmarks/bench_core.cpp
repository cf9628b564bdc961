#include <benchmark/benchmark.h>

#include "znlgt/solver.hpp"

using namespace znlgt;

namespace {

void BM_PhysicalFilter(benchmark::State& state) {
  const auto spec = LatticeSpec::open(4, int(state.range(0)));
  for (auto _ : state) {
    auto sector = physical_filter(spec);
    benchmark::DoNotOptimize(sector);
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(spec.dim()));
}
BENCHMARK(BM_PhysicalFilter)->Arg(3)->Arg(8)->Arg(12);

void BM_BuildGaugeHamiltonian(benchmark::State& state) {
  const auto spec = LatticeSpec::open(int(state.range(0)), int(state.range(1)));
  const ModelParams p{1.0, 0.5, 1.0, false};
  for (auto _ : state) {
    auto h = build_gauge_hamiltonian(p, spec);
    benchmark::DoNotOptimize(h);
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(spec.dim()));
}
BENCHMARK(BM_BuildGaugeHamiltonian)->Args({4, 3})->Args({3, 8})->Args({4, 6});

void BM_BuildGamma(benchmark::State& state) {
  const auto spec = LatticeSpec::open(4, int(state.range(0)));
  for (auto _ : state) {
    auto gamma = build_gamma(spec);
    benchmark::DoNotOptimize(gamma);
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(spec.dim()));
}
BENCHMARK(BM_BuildGamma)->Arg(3)->Arg(8);

void BM_SecondOrderEffective(benchmark::State& state) {
  const auto spec = LatticeSpec::open(int(state.range(0)), 3);
  PenaltyParams pp;
  pp.t_tilde = 1.0;
  pp.w_tilde = 0.7;
  pp.u = 50.0;
  pp.counterterms = CountertermMode::Off;
  const auto h0 = build_uncoupled_hamiltonian(pp, {0.0, 0.5, 1.0, false}, spec);
  const auto gamma = build_gamma(spec);
  const auto proj = physical_projector(spec);
  for (auto _ : state) {
    auto eff = second_order_effective(h0, gamma, pp, 3, proj);
    benchmark::DoNotOptimize(eff);
  }
}
BENCHMARK(BM_SecondOrderEffective)->Arg(3)->Arg(4)->Arg(5);

void BM_DenseEigensolve(benchmark::State& state) {
  const auto spec = LatticeSpec::open(int(state.range(0)), 3);
  const auto h = build_gauge_hamiltonian({1.0, 0.5, 1.0, false}, spec);
  for (auto _ : state) {
    auto decomp = dense_eigensolve(h);
    benchmark::DoNotOptimize(decomp);
  }
}
BENCHMARK(BM_DenseEigensolve)->Arg(3)->Arg(4);

void BM_EvolveStates(benchmark::State& state) {
  const auto spec = LatticeSpec::open(4, 3);
  const auto h = build_gauge_hamiltonian({1.0, 0.5, 1.0, false}, spec);
  const auto decomp = dense_eigensolve(h);
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(Eigen::Index(spec.dim()));
  psi0(Eigen::Index(encode(dirac_sea_state(spec, 0), spec))) = 1.0;
  const auto times = sample_times(5.0, 0.1);
  for (auto _ : state) {
    auto states = evolve_states(decomp, psi0, times);
    benchmark::DoNotOptimize(states);
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(times.size()));
}
BENCHMARK(BM_EvolveStates);

}  // namespace

BENCHMARK_MAIN();
