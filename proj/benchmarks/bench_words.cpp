#include <random>

#include "benchmark/benchmark.h"
#include "snowflake/aut.hpp"
#include "snowflake/words.hpp"

using namespace snowflake;

namespace {

Word random_word(std::size_t len, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::vector<Letter> ls;
  for (std::size_t i = 0; i < len; ++i)
    ls.emplace_back((rng() & 1) ? Kind::x : Kind::y, 0, (rng() & 1) ? 1 : -1);
  return Word(std::move(ls));
}

}  // namespace

static void BM_Reduce(benchmark::State& state) {
  Word w = random_word(static_cast<std::size_t>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(reduce(w));
}
BENCHMARK(BM_Reduce)->Arg(100)->Arg(10000);

static void BM_ApplyPhi(benchmark::State& state) {
  FreeAut phi = FreeAut::phi();
  Word w = random_word(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(apply(phi, w));
}
BENCHMARK(BM_ApplyPhi)->Arg(100)->Arg(10000);

static void BM_Measure(benchmark::State& state) {
  Word w = random_word(10000, 11);
  for (auto _ : state) benchmark::DoNotOptimize(measure(w));
}
BENCHMARK(BM_Measure);
