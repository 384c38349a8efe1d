#include <benchmark/benchmark.h>

#include <random>

#include "coarsecat/coarsecat.hpp"

using namespace coarsecat;

namespace {

Relation random_relation(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  Relation r(Carrier::range(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (coin(rng)) r.insert(x, y);
    }
  }
  return r;
}

}  // namespace

static void BM_Compose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Relation u = random_relation(n, 0.05, 1);
  const Relation v = random_relation(n, 0.05, 2);
  for (auto _ : state) benchmark::DoNotOptimize(compose(u, v));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Compose)->RangeMultiplier(2)->Range(16, 512)->Complexity();

static void BM_EquivalenceClosure(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Relation g = random_relation(n, 1.0 / static_cast<double>(n), 3);
  for (auto _ : state) benchmark::DoNotOptimize(equivalence_closure(g.carrier(), std::span<const Relation>(&g, 1)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EquivalenceClosure)->RangeMultiplier(2)->Range(16, 512)->Complexity();

static void BM_Thicken(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Relation u = random_relation(n, 0.05, 4);
  PointSet b(u.carrier());
  for (std::size_t i = 0; i < n; i += 7) b.insert(i);
  for (auto _ : state) benchmark::DoNotOptimize(thicken(u, b));
}
BENCHMARK(BM_Thicken)->Arg(64)->Arg(512);

static void BM_EnumerateSpaces(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_spaces(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_EnumerateSpaces)->DenseRange(2, 4);

static void BM_CountMorphisms(benchmark::State& state) {
  const auto spaces = enumerate_spaces(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    std::size_t total = 0;
    for (const GBCSpace& x : spaces) total += count_morphisms(x, spaces.back());
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_CountMorphisms)->DenseRange(2, 4);

static void BM_OracleProduct(benchmark::State& state) {
  const Carrier two = Carrier::range(2);
  const Diagram d = Diagram::discrete({max_empty(two), min_min(two)});
  const LimitResult l = limit(d);
  OracleOptions options;
  options.test_cap = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(universal_property_check(l.cone, d, options));
}
BENCHMARK(BM_OracleProduct)->DenseRange(1, 3);

static void BM_FlasqueSearch(benchmark::State& state) {
  const auto spaces = enumerate_spaces(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    std::size_t flasque = 0;
    for (const GBCSpace& x : spaces) flasque += is_flasque(x).flasque ? 1 : 0;
    benchmark::DoNotOptimize(flasque);
  }
}
BENCHMARK(BM_FlasqueSearch)->DenseRange(2, 3);

BENCHMARK_MAIN();
