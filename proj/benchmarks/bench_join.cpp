#include <benchmark/benchmark.h>

#include "sofic/construct.hpp"
#include "sofic/group_parse.hpp"
#include "sofic/verify.hpp"

using namespace sofic;

namespace {

const GroupFile& registry() {
  static const GroupFile gf = parse_group_text(
      "finite fa table = [[0,1],[1,0]]\n"
      "finite fb table = [[0,1],[1,0]]\n"
      "freeproduct fp = fa * fb\n"
      "finite aa table = [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]\n"
      "finite ab table = [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]\n"
      "finite h table = [[0,1],[1,0]]\n"
      "amalgam am = aa *_{h} ab with embed_left = [0,2], embed_right = [0,2]\n");
  return gf;
}

void BM_free_join(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto fa = registry().get("fa");
  const auto fb = registry().get("fb");
  const auto fp = registry().get("fp");
  const auto left = regular_model(fa, d / 2);
  const auto right = regular_model(fb, d / 2);
  uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(free_join(left, right, fp, 4, ++seed));
}

void BM_amalgam_join(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto left = regular_model(registry().get("aa"), d / 4);
  const auto right = regular_model(registry().get("ab"), d / 4);
  const auto am = registry().get("am");
  uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(amalgamated_join(left, right, am, ++seed, 3));
}

void BM_ga_check_join(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto fp = registry().get("fp");
  const auto join = free_join(regular_model(registry().get("fa"), d / 2),
                              regular_model(registry().get("fb"), d / 2), fp, 4, 11);
  const std::vector<Word> f = {parse_word(*fp, "fa.g1"), parse_word(*fp, "fb.g1")};
  for (auto _ : state) benchmark::DoNotOptimize(ga_check(join, f, 4, 0.3));
}

}  // namespace

BENCHMARK(BM_free_join)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_amalgam_join)->Arg(48)->Arg(480)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ga_check_join)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
