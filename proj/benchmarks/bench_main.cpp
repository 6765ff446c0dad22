#include <benchmark/benchmark.h>

#include "hodgekit/bosonfermion.hpp"
#include "hodgekit/elsv.hpp"
#include "hodgekit/hurwitz.hpp"
#include "hodgekit/kp.hpp"

using namespace hodgekit;

static void BM_HurwitzConnected(benchmark::State& state) {
  const int w = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hurwitz_connected(6, w));
}
BENCHMARK(BM_HurwitzConnected)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_OracleHurwitz(benchmark::State& state) {
  const RamificationProfile pr{0, {3, 2, 1}};
  for (auto _ : state) benchmark::DoNotOptimize(oracle_hurwitz_number(pr));
}
BENCHMARK(BM_OracleHurwitz)->Unit(benchmark::kMillisecond);

static void BM_ElsvSolveMany(benchmark::State& state) {
  const auto types = types_for_caps(8, 8);
  for (auto _ : state) benchmark::DoNotOptimize(elsv_solve_many(types));
}
BENCHMARK(BM_ElsvSolveMany)->Unit(benchmark::kMillisecond);

static void BM_BuildG(benchmark::State& state) {
  const int w = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_G(w, 8));
}
BENCHMARK(BM_BuildG)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_BosonToFermion(benchmark::State& state) {
  const int e = static_cast<int>(state.range(0));
  const Series tau = hurwitz_tau(4, e);
  for (auto _ : state) benchmark::DoNotOptimize(boson_to_fermion(tau, e));
}
BENCHMARK(BM_BosonToFermion)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_PluckerMinors(benchmark::State& state) {
  const int e = static_cast<int>(state.range(0));
  const auto factors = hurwitz_wedge_factors(e, 4, e);
  for (auto _ : state) benchmark::DoNotOptimize(decomposable_to_coords(factors, e));
}
BENCHMARK(BM_PluckerMinors)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_KPResiduals(benchmark::State& state) {
  const int w = static_cast<int>(state.range(0));
  const Caps c = Caps::weight(w);
  const Series f = log(Series::constant(1, c) + schur({3}).relabel_caps(c));
  for (auto _ : state) benchmark::DoNotOptimize(kp_residuals(f));
}
BENCHMARK(BM_KPResiduals)->Arg(14)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
