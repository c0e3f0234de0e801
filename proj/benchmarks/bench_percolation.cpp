#include <benchmark/benchmark.h>

#include "prodperc/percolation.hpp"
#include "prodperc/product_graph.hpp"
#include "prodperc/union_find.hpp"

using namespace prodperc;

static void BM_EdgeCoin(benchmark::State& state) {
    const CoinFlip coin(12345, 0.5);
    std::uint64_t id = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(coin.open(id++));
    }
}
BENCHMARK(BM_EdgeCoin);

static void BM_CensusHypercube(benchmark::State& state) {
    const auto pg = hypercube(static_cast<int>(state.range(0)));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const auto stats =
            component_stats(pg, PercolationSample{seed++, 1.0 / state.range(0), SampleMode::on_the_fly});
        benchmark::DoNotOptimize(stats.l1);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pg.edge_count()));
}
BENCHMARK(BM_CensusHypercube)->Arg(10)->Arg(14)->Arg(16)->Arg(18);

static void BM_CensusBitmaskVsFly(benchmark::State& state) {
    const auto pg = hypercube(14);
    const auto mode = state.range(0) ? SampleMode::bitmask : SampleMode::on_the_fly;
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const auto stats = component_stats(pg, PercolationSample{seed++, 1.5 / 14, mode});
        benchmark::DoNotOptimize(stats.l1);
    }
}
BENCHMARK(BM_CensusBitmaskVsFly)->Arg(0)->Arg(1);

static void BM_ExploreCapped(benchmark::State& state) {
    const auto pg = hypercube(20);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const auto r = explore_component(pg, 0, PercolationSample{seed++, 1.5 / 20, SampleMode::on_the_fly},
                                         static_cast<std::uint64_t>(state.range(0)));
        benchmark::DoNotOptimize(r.processed);
    }
}
BENCHMARK(BM_ExploreCapped)->Arg(100)->Arg(10000);

static void BM_UnionFind(benchmark::State& state) {
    const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        UnionFind uf(n);
        for (std::uint64_t v = 0; v + 1 < n; v += 2) uf.unite(static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(v + 1));
        for (std::uint64_t v = 0; v + 2 < n; v += 2) uf.unite(static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(v + 2));
        benchmark::DoNotOptimize(uf.find(0));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_UnionFind)->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();
