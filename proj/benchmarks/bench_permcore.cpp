#include <benchmark/benchmark.h>

#include "sofic/partial_perm.hpp"
#include "sofic/rng.hpp"

using namespace sofic;

namespace {

void BM_compose_full(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(1);
  const Perm a = random_perm(d, rng);
  const Perm b = random_perm(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(compose(a, b));
  state.SetItemsProcessed(state.iterations() * d);
}

void BM_compose_partial(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(2);
  const auto a = random_perm(d, rng).to_partial();
  const auto b = random_perm(d, rng).to_partial();
  for (auto _ : state) benchmark::DoNotOptimize(compose(a, b));
  state.SetItemsProcessed(state.iterations() * d);
}

void BM_hs_dist(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(3);
  const auto a = random_perm(d, rng).to_partial();
  const auto b = random_perm(d, rng).to_partial();
  for (auto _ : state) benchmark::DoNotOptimize(hs_dist(a, b));
  state.SetItemsProcessed(state.iterations() * d);
}

void BM_random_perm(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(random_perm(d, rng));
  state.SetItemsProcessed(state.iterations() * d);
}

}  // namespace

BENCHMARK(BM_compose_full)->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK(BM_compose_partial)->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK(BM_hs_dist)->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK(BM_random_perm)->Arg(100)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
