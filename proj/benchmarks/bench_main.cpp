#include <memory>
#include <random>

#include <benchmark/benchmark.h>

#include <feeder/approx.hpp>
#include <feeder/embedding.hpp>
#include <feeder/exact.hpp>
#include <feeder/selectors.hpp>
#include <feeder/world_gen.hpp>

namespace {

feeder::GeneratedWorld world(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  feeder::WorldParams p;
  p.n_demos = n;
  p.n_facts = 16;
  p.redundant_fraction = 0.3;
  return feeder::random_world(rng, p);
}

void BM_Approx(benchmark::State& state) {
  const auto g = world(static_cast<std::size_t>(state.range(0)), 1);
  feeder::TreeConfig c;
  c.rounds = static_cast<int>(state.range(1));
  std::size_t calls = 0;
  for (auto _ : state) {
    auto r = feeder::approx_feeder(*g.oracle, g.train, c);
    calls = r.oracle_calls;
    benchmark::DoNotOptimize(r.feeder);
  }
  state.counters["oracle_calls"] = static_cast<double>(calls);
}
BENCHMARK(BM_Approx)->Args({64, 1})->Args({256, 1})->Args({1024, 1})->Args({1024, 3});

void BM_ExactIterative(benchmark::State& state) {
  const auto g = world(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(feeder::exact_feeder_iterative(*g.oracle, g.train).feeder);
}
BENCHMARK(BM_ExactIterative)->Arg(16)->Arg(64);

void BM_ExactMaintain(benchmark::State& state) {
  const auto g = world(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(feeder::exact_feeder_maintain(*g.oracle, g.train).feeder);
}
BENCHMARK(BM_ExactMaintain)->Arg(16)->Arg(32);

void BM_Select(benchmark::State& state) {
  const auto g = world(static_cast<std::size_t>(state.range(0)), 4);
  auto embedder = std::make_shared<feeder::CachingEmbedder>(std::make_shared<feeder::TrigramEmbedder>());
  const auto kind = static_cast<feeder::SelectorKind>(state.range(1));
  const feeder::Selector selector(kind, embedder);
  const auto query = g.train[0].x;
  for (auto _ : state) benchmark::DoNotOptimize(selector.select(g.train.demos(), query, 8));
}
BENCHMARK(BM_Select)
    ->Args({1024, static_cast<int>(feeder::SelectorKind::Random)})
    ->Args({1024, static_cast<int>(feeder::SelectorKind::Similarity)})
    ->Args({1024, static_cast<int>(feeder::SelectorKind::Diversity)});

}  // namespace
BENCHMARK_MAIN();
