#include <benchmark/benchmark.h>

#include "prodperc/product_graph.hpp"

using namespace prodperc;

static void BM_NeighborWalk(benchmark::State& state) {
    const auto pg = hypercube(static_cast<int>(state.range(0)));
    std::uint64_t v = 0;
    for (auto _ : state) {
        std::uint64_t acc = 0;
        pg.for_each_neighbor(v, [&](ProductGraph::Vertex nb, ProductGraph::EdgeId id) {
            acc += nb ^ id;
        });
        benchmark::DoNotOptimize(acc);
        v = (v + 1) & (pg.vertex_count() - 1);
    }
}
BENCHMARK(BM_NeighborWalk)->Arg(14)->Arg(20);

static void BM_EncodeDecode(benchmark::State& state) {
    std::vector<FactorGraph> factors;
    for (int i = 0; i < 6; ++i) factors.push_back(build_named(GraphFamily::cycle, 5));
    const ProductGraph pg(std::move(factors));
    std::uint64_t v = 0;
    for (auto _ : state) {
        const auto coords = pg.decode(v);
        benchmark::DoNotOptimize(pg.encode(coords));
        v = (v + 7919) % pg.vertex_count();
    }
}
BENCHMARK(BM_EncodeDecode);

static void BM_CanonicalEdgeId(benchmark::State& state) {
    const auto pg = hypercube(20);
    std::uint64_t v = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pg.canonical_edge_id(v, v ^ 1));
        v = (v + 2) & (pg.vertex_count() - 1);
    }
}
BENCHMARK(BM_CanonicalEdgeId);
