#include <benchmark/benchmark.h>

#include "kpp/cell.hpp"
#include "kpp/logistic.hpp"
#include "kpp/reaction.hpp"
#include "kpp/spectral.hpp"

namespace {

void BM_EvolveCell(benchmark::State& state) {
  const kpp::Nonlinearity f = kpp::make_periodic_fisher(0.5, 1.0);
  const kpp::TorusField init(static_cast<std::size_t>(state.range(0)), 0.01, 1.0);
  for (auto _ : state) {
    auto traj = kpp::evolve_cell(f, init, 1.0, 1e-3, 1000);
    benchmark::DoNotOptimize(traj.final_field().mean());
  }
}
BENCHMARK(BM_EvolveCell)->Arg(64)->Arg(256);

void BM_Eigenpair(benchmark::State& state) {
  const kpp::Nonlinearity f = kpp::make_periodic_fisher(0.5, 1.0);
  for (auto _ : state) {
    auto pair = kpp::eigenpair_at_zero(f, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(pair.eigenvalue);
  }
}
BENCHMARK(BM_Eigenpair)->Arg(512)->Arg(2048);

void BM_LogisticProfile(benchmark::State& state) {
  const kpp::Nonlinearity f = kpp::make_fisher();
  for (auto _ : state) {
    auto profile = kpp::solve_profile(f);
    benchmark::DoNotOptimize(profile.eval(3.0));
  }
}
BENCHMARK(BM_LogisticProfile);

void BM_TerminalValue(benchmark::State& state) {
  const kpp::Nonlinearity f = kpp::make_periodic_fisher(0.5, 1.0);
  for (auto _ : state) {
    auto res = kpp::solve_terminal_value(f, 0.5, 4.0, 1e-8, 32, 1e-2);
    benchmark::DoNotOptimize(res.B);
  }
}
BENCHMARK(BM_TerminalValue);

}  // namespace

BENCHMARK_MAIN();
