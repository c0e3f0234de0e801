#include <doctest.h>

#include <bit>
#include <optional>
#include <vector>

#include "prodperc/errors.hpp"
#include "prodperc/experiments.hpp"
#include "prodperc/hash.hpp"
#include "prodperc/isoperimetry.hpp"

using namespace prodperc;

namespace {

// Independent oracle: plain subset loop, boundary recomputed from scratch.
struct NaiveIso {
    std::uint64_t boundary;
    int size;
};

NaiveIso naive_isoperimetric(const FactorGraph& g) {
    const int n = g.vertex_count();
    std::optional<NaiveIso> best;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const int size = std::popcount(mask);
        if (2 * size > n) continue;
        std::uint64_t boundary = 0;
        for (int v = 0; v < n; ++v) {
            if (!(mask & (1u << v))) continue;
            for (int u : g.neighbors(v))
                if (!(mask & (1u << u))) ++boundary;
        }
        if (!best || boundary * static_cast<std::uint64_t>(best->size) <
                         best->boundary * static_cast<std::uint64_t>(size))
            best = NaiveIso{boundary, size};
    }
    return *best;
}

ProductGraph make_product(std::vector<std::pair<GraphFamily, int>> parts) {
    std::vector<FactorGraph> factors;
    for (const auto& [kind, k] : parts) factors.push_back(build_named(kind, k));
    return ProductGraph(std::move(factors));
}

}  // namespace

TEST_CASE("exact isoperimetric constants of named graphs") {
    CHECK(isoperimetric_exact(build_named(GraphFamily::edge, 2)).value == Rational(1));
    CHECK(isoperimetric_exact(build_named(GraphFamily::path, 4)).value == Rational(1, 2));
    CHECK(isoperimetric_exact(build_named(GraphFamily::cycle, 4)).value == Rational(1));

    const auto p4 = isoperimetric_exact(build_named(GraphFamily::path, 4));
    CHECK(p4.witness == std::vector<int>{0, 1});  // smallest-bitmask tie break
    CHECK(p4.boundary_size == 1);
}

TEST_CASE("exact search agrees with the naive oracle") {
    SplitMix64 rng(11);
    for (int rep = 0; rep < 25; ++rep) {
        // random connected graph on 5..9 vertices
        const int n = 5 + static_cast<int>(rng.next_below(5));
        std::vector<std::pair<int, int>> edges;
        for (int v = 1; v < n; ++v)
            edges.emplace_back(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(v))), v);
        for (int extra = 0; extra < n; ++extra) {
            const int u = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            const int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            if (u == v) continue;
            bool dup = false;
            for (const auto& [a, b] : edges)
                dup = dup || (a == std::min(u, v) && b == std::max(u, v));
            if (!dup) edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        const FactorGraph g("rnd", n, edges);
        const auto fast = isoperimetric_exact(g);
        const auto slow = naive_isoperimetric(g);
        CHECK(fast.value == Rational(static_cast<std::int64_t>(slow.boundary), slow.size));
        // the witness must achieve the reported ratio
        std::uint64_t boundary = 0;
        for (int v : fast.witness)
            for (int u : g.neighbors(v)) {
                bool inside = false;
                for (int w : fast.witness) inside = inside || w == u;
                if (!inside) ++boundary;
            }
        CHECK(boundary == fast.boundary_size);
        CHECK(fast.value == Rational(static_cast<std::int64_t>(boundary),
                                     static_cast<std::int64_t>(fast.witness.size())));
    }
}

TEST_CASE("zero constant exactly for disconnected graphs") {
    const std::vector<std::pair<int, int>> edges = {{0, 1}, {2, 3}};
    const FactorGraph g("2K2", 4, edges);
    const auto r = isoperimetric_exact(g);
    CHECK(r.value == Rational(0));
    CHECK(r.boundary_size == 0);

    for (const auto kind : {GraphFamily::path, GraphFamily::cycle, GraphFamily::complete}) {
        const auto connected = build_named(kind, 5);
        CHECK(isoperimetric_exact(connected).value > Rational(0));
    }
}

TEST_CASE("isoperimetry guards") {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < 25; ++v) edges.emplace_back(v - 1, v);
    CHECK_THROWS_AS(isoperimetric_exact(FactorGraph("p25", 25, edges)), CapacityError);
    CHECK_THROWS_AS(isoperimetric_exact(FactorGraph("k1", 1, {})), InvalidParameterError);
}

TEST_CASE("chung-tetali bounds") {
    const auto h5 = hypercube(5);
    const auto [lo, hi] = chung_tetali_bounds(h5);
    CHECK(lo == Rational(1, 2));
    CHECK(hi == Rational(1));

    const auto mixed = make_product({{GraphFamily::cycle, 4}, {GraphFamily::path, 4}});
    const auto [lo2, hi2] = chung_tetali_bounds(mixed);
    CHECK(lo2 == Rational(1, 4));
    CHECK(hi2 == Rational(1, 2));

    const auto single = make_product({{GraphFamily::cycle, 5}});
    const auto fi = isoperimetric_exact(build_named(GraphFamily::cycle, 5)).value;
    const auto [lo3, hi3] = chung_tetali_bounds(single);
    CHECK(lo3 == fi.half());
    CHECK(hi3 == fi);
}

TEST_CASE("sandwich verification on named products") {
    const auto square = verify_sandwich(make_product({{GraphFamily::edge, 2}, {GraphFamily::edge, 2}}));
    CHECK(square.pass);
    CHECK(square.exact == Rational(1));
    CHECK(square.lower == Rational(1, 2));
    CHECK(square.upper == Rational(1));

    const auto torus = verify_sandwich(make_product({{GraphFamily::cycle, 4}, {GraphFamily::cycle, 4}}));
    CHECK(torus.pass);
    CHECK(torus.exact >= Rational(1, 2));
    CHECK(torus.exact <= Rational(1));

    const auto slab = verify_sandwich(make_product({{GraphFamily::path, 4}, {GraphFamily::edge, 2}}));
    CHECK(slab.pass);
    CHECK(slab.exact >= Rational(1, 4));
    CHECK(slab.exact <= Rational(1, 2));
}

TEST_CASE("sandwich holds on random materializable products") {
    SplitMix64 rng(2024);
    for (int rep = 0; rep < 12; ++rep) {
        const auto pg = random_small_product(rng, 2, 3, 24);
        const auto report = verify_sandwich(pg);
        CHECK(report.pass);
    }
}

TEST_CASE("balanced cut checker: named cases") {
    const auto p3 = build_named(GraphFamily::path, 3);
    const auto r = balanced_cut_check(p3, {{0}, {1}, {2}});
    CHECK(r.criterion_holds);
    CHECK(r.largest_component == 3);

    const std::vector<std::pair<int, int>> edges = {{0, 1}, {2, 3}};
    const FactorGraph two_edges("2K2", 4, edges);
    const auto w = balanced_cut_check(two_edges, {{0, 1}, {2, 3}});
    CHECK(!w.criterion_holds);
    CHECK(w.witness == std::vector<int>{0});  // first violating J

    const auto c6 = build_named(GraphFamily::cycle, 6);
    const auto s = balanced_cut_check(c6, {{0}, {1}, {2}, {3}, {4}, {5}});
    CHECK(s.criterion_holds);
    CHECK(s.largest_component == 6);
}

TEST_CASE("balanced cut checker: invalid partitions") {
    const auto p4 = build_named(GraphFamily::path, 4);
    CHECK_THROWS_AS(balanced_cut_check(p4, {{0, 1}, {1, 2, 3}}), InvalidParameterError);  // overlap
    CHECK_THROWS_AS(balanced_cut_check(p4, {{0, 1}, {2}}), InvalidParameterError);        // non-cover
    CHECK_THROWS_AS(balanced_cut_check(p4, {{0, 2}, {1, 3}}), InvalidParameterError);     // disconnected cell
    CHECK_THROWS_AS(balanced_cut_check(p4, {{0, 1}, {}, {2, 3}}), InvalidParameterError); // empty cell
    CHECK_THROWS_AS(balanced_cut_check(p4, {{0, 1, 2, 4}}), InvalidParameterError);       // out of range

    std::vector<std::pair<int, int>> path_edges;
    for (int v = 1; v < 22; ++v) path_edges.emplace_back(v - 1, v);
    const FactorGraph p22("p22", 22, path_edges);
    std::vector<std::vector<int>> singletons;
    for (int v = 0; v < 22; ++v) singletons.push_back({v});
    CHECK_THROWS_AS(balanced_cut_check(p22, singletons), CapacityError);  // > 20 cells
}

TEST_CASE("balanced cut implication on random partitions") {
    SplitMix64 rng(5);
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 4 + static_cast<int>(rng.next_below(4));
        std::vector<std::pair<int, int>> edges;
        for (int v = 1; v < n; ++v)
            if (rng.next_below(4) != 0)
                edges.emplace_back(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(v))), v);
        std::vector<char> used(static_cast<std::size_t>(n), 0);
        for (const auto& [a, b] : edges) used[a] = used[b] = 1;
        // isolated vertices become singleton cells; grow remaining cells greedily
        FactorGraph g("rnd", n, edges);
        std::vector<std::vector<int>> cells;
        std::vector<char> assigned(static_cast<std::size_t>(n), 0);
        for (int v = 0; v < n; ++v) {
            if (assigned[v]) continue;
            std::vector<int> cell{v};
            assigned[v] = 1;
            // greedy growth along edges keeps cells connected
            for (int u : g.neighbors(v))
                if (!assigned[u] && rng.next_below(2) == 0) {
                    assigned[u] = 1;
                    cell.push_back(u);
                }
            cells.push_back(cell);
        }
        if (cells.size() > 20) continue;
        const auto result = balanced_cut_check(g, cells);
        if (result.criterion_holds) CHECK(3 * result.largest_component > n);
    }
}

TEST_CASE("mask interface matches list interface") {
    const auto c5 = build_named(GraphFamily::cycle, 5);
    BalancedCutChecker checker(c5);
    const std::vector<std::uint32_t> masks = {0b00011, 0b01100, 0b10000};
    const auto a = checker.check_masks(masks);
    const auto b = checker.check({{0, 1}, {2, 3}, {4}});
    CHECK(a.criterion_holds == b.criterion_holds);
    CHECK(a.witness == b.witness);
    CHECK(a.largest_component == b.largest_component);
}
