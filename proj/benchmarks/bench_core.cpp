#include <benchmark/benchmark.h>

#include <random>

#include "bk/coalgebra.hpp"
#include "bk/completeness.hpp"
#include "bk/fixpoint.hpp"
#include "bk/model.hpp"

namespace {

bk::Relation random_relation(const std::string& from, const std::string& to, std::size_t n,
                             double density, unsigned seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(density);
  bk::Relation r(from, n, to, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (coin(rng)) r.set(x, y);
  return r;
}

void BM_Compose(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto r = random_relation("A", "B", n, 0.05, 1);
  auto s = random_relation("B", "A", n, 0.05, 2);
  for (auto _ : state) benchmark::DoNotOptimize(bk::compose(r, s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Compose)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_BoxplusSet(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto r = random_relation("A", "B", n, 0.05, 3);
  bk::BitSet bits(n);
  for (std::size_t i = 0; i < n; i += 3) bits.set(i);
  bk::Predicate p("B", bits);
  for (auto _ : state) benchmark::DoNotOptimize(bk::boxplus_set(r, p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BoxplusSet)->RangeMultiplier(2)->Range(64, 4096)->Complexity();

void BM_DiagonalCertificate(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto ra = random_relation("A", "B", n, 0.1, 4);
  auto rb = random_relation("B", "A", n, 0.1, 5);
  for (auto _ : state) benchmark::DoNotOptimize(bk::diagonal_certificate(ra, rb));
}
BENCHMARK(BM_DiagonalCertificate)->RangeMultiplier(2)->Range(16, 256);

void BM_TerminalSequence(benchmark::State& state) {
  bk::StrategyProfile profile;
  profile.sa = 2;
  profile.sb = 2;
  profile.m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bk::terminal_sequence(profile, 3));
}
BENCHMARK(BM_TerminalSequence)->DenseRange(1, 2);

}  // namespace

BENCHMARK_MAIN();
