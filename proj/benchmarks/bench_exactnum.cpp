#include "benchmark/benchmark.h"
#include "snowflake/exactnum.hpp"

using namespace snowflake;

static void BM_MatPow(benchmark::State& state) {
  IntMatrix2 M{2, 1, 1, 0};
  unsigned long k = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mat_pow(M, k));
}
BENCHMARK(BM_MatPow)->Arg(24)->Arg(128)->Arg(1024);

static void BM_QuadMul(benchmark::State& state) {
  QuadNum a(Rational(3, 7), Rational(5, 11));
  QuadNum b(Rational(-2, 9), Rational(4, 13));
  for (auto _ : state) {
    QuadNum c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_QuadMul);

static void BM_QuadSign(benchmark::State& state) {
  QuadNum close(Rational(665857, 470832), Rational(-1));  // barely positive
  for (auto _ : state) benchmark::DoNotOptimize(close.sign());
}
BENCHMARK(BM_QuadSign);
