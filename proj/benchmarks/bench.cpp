#include <benchmark/benchmark.h>

#include <gmpxx.h>

#include <string>

#include "npal/constants.hpp"
#include "npal/linforms.hpp"
#include "npal/patterns.hpp"
#include "npal/reduction.hpp"
#include "npal/search.hpp"
#include "npal/sequence.hpp"

namespace {

const npal::AlgebraicConstants& constants256() {
  static npal::AlgebraicConstants c = npal::make_constants(256);
  return c;
}

void BM_Term(benchmark::State& state) {
  unsigned long n = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(npal::term(n));
}
BENCHMARK(BM_Term)->Arg(100)->Arg(500)->Arg(2000);

void BM_BallMul(benchmark::State& state) {
  const auto& c = constants256();
  npal::RealBall x = c.alpha1;
  for (auto _ : state) benchmark::DoNotOptimize(x * x);
}
BENCHMARK(BM_BallMul);

void BM_BallLog(benchmark::State& state) {
  const auto& c = constants256();
  npal::RealBall x = c.alpha1;
  for (auto _ : state) benchmark::DoNotOptimize(x.log());
}
BENCHMARK(BM_BallLog);

void BM_MakeConstants(benchmark::State& state) {
  long digits = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(npal::make_constants(digits));
}
BENCHMARK(BM_MakeConstants)->Arg(64)->Arg(256)->Arg(512);

void BM_BinetTerm(benchmark::State& state) {
  const auto& c = constants256();
  unsigned long n = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(npal::binet_term(n, c));
}
BENCHMARK(BM_BinetTerm)->Arg(19)->Arg(500)->Arg(2000);

void BM_PatternParse(benchmark::State& state) {
  mpz_class v = npal::term(163);  // 28-digit term, no decomposition
  for (auto _ : state) benchmark::DoNotOptimize(npal::pattern_parse_all(v));
}
BENCHMARK(BM_PatternParse);

void BM_Search(benchmark::State& state) {
  unsigned long n_max = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(npal::small_range_search(n_max, 100));
}
BENCHMARK(BM_Search)->Arg(100)->Arg(500);

void BM_ContinuedFraction(benchmark::State& state) {
  const auto& c = constants256();
  npal::RealBall theta = c.log10 / c.log_alpha1;
  int count = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(npal::continued_fraction(theta, count));
}
BENCHMARK(BM_ContinuedFraction)->Arg(30)->Arg(90);

void BM_DeriveBounds(benchmark::State& state) {
  const auto& c = constants256();
  for (auto _ : state) benchmark::DoNotOptimize(npal::derive_bounds(c));
}
BENCHMARK(BM_DeriveBounds);

void BM_ReduceStage1(benchmark::State& state) {
  const auto& c = constants256();
  mpz_class M("1" + std::string(48, '0'));
  for (auto _ : state) benchmark::DoNotOptimize(npal::reduce_stage1(c, M));
}
BENCHMARK(BM_ReduceStage1);

}  // namespace

BENCHMARK_MAIN();
