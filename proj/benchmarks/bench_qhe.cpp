#include <benchmark/benchmark.h>

#include "qhe/channels.hpp"
#include "qhe/ergotropy.hpp"
#include "qhe/sweep.hpp"

static void BM_ApplyQubitGad(benchmark::State& state) {
  const auto ch = qhe::gad_qubit(0.2, 0.5);
  const auto rho = qhe::make_diagonal_state({0.9, 0.1});
  for (auto _ : state) benchmark::DoNotOptimize(qhe::apply(ch, rho));
}
BENCHMARK(BM_ApplyQubitGad);

static void BM_ApplyQutritGad(benchmark::State& state) {
  const auto ch = qhe::gad_qutrit(0.3, 0.4, 0.5);
  const auto rho = qhe::make_diagonal_state({0.5, 0.3, 0.2});
  for (auto _ : state) benchmark::DoNotOptimize(qhe::apply(ch, rho));
}
BENCHMARK(BM_ApplyQutritGad);

static void BM_Fig1Sweep(benchmark::State& state) {
  const auto spec = qhe::preset("fig1");
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qhe::run_sweep(spec, threads));
}
BENCHMARK(BM_Fig1Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_QutritLandscape(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> f_axis(n), t_axis(n);
  for (std::size_t i = 0; i < n; ++i) {
    f_axis[i] = static_cast<double>(i) / (n - 1);
    t_axis[i] = 0.95 * static_cast<double>(i) / (n - 1);
  }
  const std::vector<double> initial{1.0, 0.0, 0.0};
  const std::vector<double> rates{0.5, 1.0};
  const qhe::Hamiltonian h({0.0, 1.0, 2.0});
  for (auto _ : state) benchmark::DoNotOptimize(qhe::ergotropy_landscape(initial, h, f_axis, t_axis, rates));
}
BENCHMARK(BM_QutritLandscape)->Arg(51)->Arg(201)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
