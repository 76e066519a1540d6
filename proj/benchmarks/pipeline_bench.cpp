#include <benchmark/benchmark.h>

#include "c4free/generators.hpp"
#include "c4free/hypergraph.hpp"
#include "c4free/lowerbounds.hpp"
#include "c4free/pipeline.hpp"
#include "c4free/reductions.hpp"
#include "c4free/subdivisions.hpp"

using namespace c4free;

static void BM_ExtractGnp(benchmark::State& state) {
  const auto g = gen_gnp(static_cast<std::size_t>(state.range(0)), 0.1, Seed{1});
  ExtractionParams p;
  p.s = 3;
  p.k = 2;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(extract_induced_c4free(g, p, Seed{seed++}));
}
BENCHMARK(BM_ExtractGnp)->Arg(30)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

static void BM_ModelLopsided(benchmark::State& state) {
  const auto g = gen_lopsided(40, 20, 3, 2, Seed{1});
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(model_lopsided(g, 2, 2, Seed{seed++}));
}
BENCHMARK(BM_ModelLopsided)->Unit(benchmark::kMicrosecond);

static void BM_Sparsify(benchmark::State& state) {
  const auto g = projective_plane_incidence(static_cast<std::uint32_t>(state.range(0))).graph();
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sparsify_short_cycles(g, 2, Rational(1, 20), Seed{seed++}));
}
BENCHMARK(BM_Sparsify)->Arg(5)->Arg(11)->Unit(benchmark::kMicrosecond);

static void BM_FurediKernel(benchmark::State& state) {
  Rng rng(Seed{5});
  const auto r = static_cast<std::size_t>(state.range(0));
  std::vector<HyperEdge> edges;
  for (int i = 0; i < 200; ++i) edges.push_back(rng.subset(30, static_cast<std::uint32_t>(r)));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const Hypergraph h(30, edges);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(furedi_kernel(h, 2, 2, Seed{seed++}));
    } catch (const KernelFailure&) {
    }
  }
}
BENCHMARK(BM_FurediKernel)->DenseRange(3, 6)->Unit(benchmark::kMicrosecond);

static void BM_FSearch(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(f_search(3, 2, 5));
}
BENCHMARK(BM_FSearch)->Unit(benchmark::kMillisecond);

static void BM_LbExperiment(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(lb_experiment(10, 0.5, 2, 4, 200, Seed{7}));
}
BENCHMARK(BM_LbExperiment)->Unit(benchmark::kMillisecond);

static void BM_InducedSubdivision(benchmark::State& state) {
  const auto g = heawood_graph();
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(induced_subdivision(g, 2, 3, Seed{seed++}));
}
BENCHMARK(BM_InducedSubdivision)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
