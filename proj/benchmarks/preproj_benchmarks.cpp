#include <benchmark/benchmark.h>

#include "preproj/generators.hpp"
#include "preproj/harness.hpp"
#include "preproj/homological.hpp"
#include "preproj/simplicity.hpp"

using namespace preproj;

namespace {

Field field_for(int code) {
  switch (code) {
    case 0: return Field::prime(5);
    case 1: return Field::galois(7, 2);
    default: return Field::rationals();
  }
}

void BM_RowReduce(benchmark::State& state) {
  const Field f = field_for(static_cast<int>(state.range(1)));
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = Matrix::random(f, n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(row_reduce(m));
}
BENCHMARK(BM_RowReduce)->ArgsProduct({{8, 16, 32}, {0, 1, 2}});

void BM_PhiMapRank(benchmark::State& state) {
  const Field f = Field::prime(5);
  const Quiver q = named_quiver("Dtilde4");
  Rng rng(2);
  const auto k = state.range(0);
  const auto m = random_rep(q, f, {2 * k, k, k, k, k}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(rank(phi_map(m, m).matrix));
}
BENCHMARK(BM_PhiMapRank)->DenseRange(1, 3);

void BM_Simplicity(benchmark::State& state) {
  const PairRep r = weyl_pair(static_cast<std::uint64_t>(state.range(0)), 1, 3);
  SearchBudget budget;
  budget.exhaustive_limit = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simplicity(r.rep(), budget, 3));
}
BENCHMARK(BM_Simplicity)->Arg(5)->Arg(7)->Arg(11);

void BM_CommonInvariant(benchmark::State& state) {
  const Field f = field_for(static_cast<int>(state.range(1)));
  Rng rng(4);
  const ACInstance inst = random_almost_commuting(f, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(common_invariant(inst));
}
BENCHMARK(BM_CommonInvariant)->ArgsProduct({{4, 8}, {0, 1, 2}});

void BM_TheoremTrial(benchmark::State& state) {
  static const char* const names[] = {"jordan", "cycle:2", "cycle:3", "kronecker", "Dtilde4"};
  TrialSpec spec;
  spec.quiver = named_quiver(names[state.range(0)]);
  spec.m = state.range(1);
  spec.field = Field::galois(7, 2);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    spec.seed = seed++;
    benchmark::DoNotOptimize(run_theorem_trial(spec, 0));
  }
  state.SetLabel(names[state.range(0)]);
}
BENCHMARK(BM_TheoremTrial)->ArgsProduct({{0, 1, 2, 3, 4}, {2, 3}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
