#include <benchmark/benchmark.h>

#include "prodperc/isoperimetry.hpp"

using namespace prodperc;

static void BM_IsoperimetricExact(benchmark::State& state) {
    // cycle of n vertices: 2^n subsets per evaluation
    const auto g = build_named(GraphFamily::cycle, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(isoperimetric_exact(g).boundary_size);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IsoperimetricExact)->Arg(12)->Arg(16)->Arg(20)->Arg(22);

static void BM_BalancedCutCheck(benchmark::State& state) {
    const auto g = build_named(GraphFamily::cycle, 7);
    const BalancedCutChecker checker(g);
    const std::vector<std::uint32_t> cells = {0b0000011, 0b0011100, 0b1100000};
    for (auto _ : state) {
        benchmark::DoNotOptimize(checker.check_masks(cells).criterion_holds);
    }
}
BENCHMARK(BM_BalancedCutCheck);

static void BM_SandwichVerify(benchmark::State& state) {
    std::vector<FactorGraph> factors;
    factors.push_back(build_named(GraphFamily::cycle, 4));
    factors.push_back(build_named(GraphFamily::cycle, 4));
    const ProductGraph pg(std::move(factors));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_sandwich(pg).pass);
    }
}
BENCHMARK(BM_SandwichVerify);
