#include <benchmark/benchmark.h>

#include "sofic/census.hpp"
#include "sofic/group_parse.hpp"

using namespace sofic;

namespace {

GroupPtr z2() {
  static const GroupFile gf = parse_group_text("finite z2 table = [[0,1],[1,0]]");
  return gf.get("z2");
}

std::vector<Word> f1() { return {parse_word(*z2(), "g1")}; }

// Brute force over S_d; the d=8 point walks 40320 permutations per iteration.
void BM_census_exhaustive(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto f = f1();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_ga(z2(), f, f, 2, 0.01, d));
}

// Conjugacy-class representatives only; feasible far past the brute-force wall.
void BM_census_orbit(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto f = f1();
  CensusOptions opt;
  opt.mode = CensusMode::OrbitDecomposed;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_ga(z2(), f, f, 2, 0.01, d, opt));
}

void BM_lex_least_conjugate(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(7);
  const Perm p = random_perm(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(lex_least_conjugate(p));
}

}  // namespace

BENCHMARK(BM_census_exhaustive)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_census_orbit)->Arg(12)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lex_least_conjugate)->Arg(8)->Arg(12);

BENCHMARK_MAIN();
