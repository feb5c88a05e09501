#include <random>

#include "benchmark/benchmark.h"
#include "snowflake/lab.hpp"
#include "snowflake/normalform.hpp"

using namespace snowflake;

static void BM_BrittonTriviality(benchmark::State& state) {
  SnowTree t = SnowTree::build({{0, 1}});
  Presentation p = presentation_S(t, 1, FreeAut::phi());
  NormalFormEngine eng(p);
  std::mt19937_64 rng(9);
  std::vector<Letter> alpha;
  for (const auto& [kind, idx] : p.standard_generators) alpha.emplace_back(kind, idx, 1);
  std::vector<Word> words;
  for (int i = 0; i < 64; ++i)
    words.push_back(random_reduced_word(alpha, static_cast<int>(state.range(0)), rng));
  std::size_t at = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eng.is_trivial(words[at]));
    at = (at + 1) % words.size();
  }
}
BENCHMARK(BM_BrittonTriviality)->Arg(8)->Arg(32);

static void BM_AmalgamNormalize(benchmark::State& state) {
  SnowTree t = SnowTree::build({{0, 1}, {1, 2}});
  Presentation p = presentation_VT(t);
  NormalFormEngine eng(p);
  std::mt19937_64 rng(10);
  std::vector<Letter> alpha;
  for (const auto& [kind, idx] : p.standard_generators) alpha.emplace_back(kind, idx, 1);
  Word w = random_reduced_word(alpha, static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(eng.vt_normalize(w));
}
BENCHMARK(BM_AmalgamNormalize)->Arg(32)->Arg(256);
