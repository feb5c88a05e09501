#include "benchmark/benchmark.h"
#include "snowflake/builders.hpp"

using namespace snowflake;

static void BM_CanonicalDiagram(benchmark::State& state) {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  Word w = snowflake_level_word(parse_word("x0"), static_cast<int>(state.range(0)), 1, phi);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_diagram(w, t));
  state.SetLabel("|w| = " + std::to_string(w.size()));
}
BENCHMARK(BM_CanonicalDiagram)->Arg(3)->Arg(5)->Arg(7);

static void BM_SnowflakeMaterialize(benchmark::State& state) {
  SnowTree t = SnowTree::build({});
  FreeAut phi = FreeAut::phi();
  int d = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(snowflake_diagram(parse_word("x0"), d, t, 1, phi, true));
}
BENCHMARK(BM_SnowflakeMaterialize)->Arg(2)->Arg(4)->Arg(6);

static void BM_SnowflakeSizes(benchmark::State& state) {
  SnowTree t = SnowTree::build({{0, 1}});
  FreeAut phi = FreeAut::phi();
  for (auto _ : state)
    benchmark::DoNotOptimize(snowflake_sizes(parse_word("x0"), 20, t, 2, phi));
}
BENCHMARK(BM_SnowflakeSizes);
