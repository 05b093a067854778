#include <random>

#include <benchmark/benchmark.h>

#include "dposet/automorphisms.hpp"
#include "dposet/catalog.hpp"
#include "dposet/families.hpp"
#include "dposet/lemmas.hpp"

using namespace dposet;

namespace {

Digraph random_digraph(std::mt19937_64& rng, int n) {
  Digraph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (rng() % 2) g.set_edge(a, b);
  return g;
}

void BM_CanonicalForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<Digraph> gs;
  for (int i = 0; i < 64; ++i) gs.push_back(random_digraph(rng, static_cast<int>(state.range(0))));
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(gs[k++ % gs.size()]));
}
BENCHMARK(BM_CanonicalForm)->DenseRange(3, 7);

// Gadget search inside the edge-supporting construct, as decode does it.
void BM_SubstructureOnConstruct(benchmark::State& state) {
  const Digraph g = Digraph::from_edges(2, {{0, 1}, {1, 0}});
  const SupportSpec spec = default_support_spec(g);
  const SupportConstruct sc = edge_support(g, spec);
  const Digraph pattern = male_pair(spec.l_sizes[0], Box::Plain, spec.d_sizes[0], Box::Plain, PairMode::To);
  for (auto _ : state) benchmark::DoNotOptimize(is_substructure(pattern, sc.total));
}
BENCHMARK(BM_SubstructureOnConstruct);

void BM_DecodeFullConstruct(benchmark::State& state) {
  const Digraph g = Digraph::from_edges(2, {{0, 0}, {0, 1}});
  const DecodeContext ctx(g, default_support_spec(g));
  for (auto _ : state) benchmark::DoNotOptimize(decode(ctx, ctx.construct.total.all_mask()));
}
BENCHMARK(BM_DecodeFullConstruct);

void BM_EnumerateLevel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_level(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateLevel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Closure(benchmark::State& state) {
  const auto gens = all_generators(true);
  for (auto _ : state) benchmark::DoNotOptimize(closure(gens));
}
BENCHMARK(BM_Closure)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
