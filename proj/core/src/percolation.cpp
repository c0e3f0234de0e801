#include "prodperc/percolation.hpp"

#include <cmath>
#include <deque>
#include <unordered_set>

#include "prodperc/union_find.hpp"

namespace prodperc {

const char* sample_mode_name(SampleMode m) {
    return m == SampleMode::bitmask ? "bitmask" : "onthefly";
}

bool edge_open(std::uint64_t seed, std::uint64_t edge_id, double p) {
    return CoinFlip(seed, p).open(edge_id);
}

SampleMode default_sample_mode(const ProductGraph& pg) {
    return pg.edge_id_bound() <= (1ull << 33) ? SampleMode::bitmask : SampleMode::on_the_fly;
}

PercolationSample make_sample(const ProductGraph& pg, std::uint64_t seed, double p) {
    return PercolationSample{seed, p, default_sample_mode(pg)};
}

namespace {

ComponentStats census_from(UnionFind& uf) {
    ComponentStats st;
    st.vertex_count = uf.element_count();
    for (std::uint64_t v = 0; v < st.vertex_count; ++v) {
        const auto idx = static_cast<std::uint32_t>(v);
        if (!uf.is_root(idx)) continue;
        const std::uint64_t size = uf.component_size(idx);
        ++st.component_count;
        ++st.size_histogram[size];
        if (size >= st.l1) {
            st.l2 = st.l1;
            st.l1 = size;
        } else if (size > st.l2) {
            st.l2 = size;
        }
    }
    return st;
}

}  // namespace

ComponentStats component_stats(const ProductGraph& pg, const PercolationSample& sample) {
    using Vertex = ProductGraph::Vertex;
    const Vertex v_count = pg.vertex_count();
    if (v_count > ProductGraph::kCensusCap)
        throw CapacityError("percolation census capped at 2^27 vertices");

    const CoinFlip coin(sample.seed, sample.p);
    UnionFind uf(v_count);

    if (sample.mode == SampleMode::bitmask) {
        const auto bound = pg.edge_id_bound();
        if (bound > (1ull << 33))
            throw CapacityError("bitmask mode needs edge-id space within 2^33 bits");
        std::vector<std::uint64_t> open_bits((bound + 63) / 64, 0);
        for (Vertex v = 0; v < v_count; ++v)
            pg.for_each_neighbor(v, [&](Vertex nb, ProductGraph::EdgeId id) {
                if (nb > v && coin.open(id)) open_bits[id >> 6] |= 1ull << (id & 63);
            });
        for (Vertex v = 0; v < v_count; ++v)
            pg.for_each_neighbor(v, [&](Vertex nb, ProductGraph::EdgeId id) {
                if (nb > v && ((open_bits[id >> 6] >> (id & 63)) & 1))
                    uf.unite(static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(nb));
            });
    } else {
        for (Vertex v = 0; v < v_count; ++v)
            pg.for_each_neighbor(v, [&](Vertex nb, ProductGraph::EdgeId id) {
                if (nb > v && coin.open(id))
                    uf.unite(static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(nb));
            });
    }
    return census_from(uf);
}

ComponentStats explicit_census(const FactorGraph& g,
                               const std::function<bool(int, int)>& open) {
    const int n = g.vertex_count();
    ComponentStats st;
    st.vertex_count = static_cast<std::uint64_t>(n);
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::deque<int> frontier;
    for (int s = 0; s < n; ++s) {
        if (visited[static_cast<std::size_t>(s)]) continue;
        visited[static_cast<std::size_t>(s)] = 1;
        frontier.push_back(s);
        std::uint64_t size = 0;
        while (!frontier.empty()) {
            const int v = frontier.front();
            frontier.pop_front();
            ++size;
            for (int u : g.neighbors(v))
                if (!visited[static_cast<std::size_t>(u)] && open(v, u)) {
                    visited[static_cast<std::size_t>(u)] = 1;
                    frontier.push_back(u);
                }
        }
        ++st.component_count;
        ++st.size_histogram[size];
        if (size >= st.l1) {
            st.l2 = st.l1;
            st.l1 = size;
        } else if (size > st.l2) {
            st.l2 = size;
        }
    }
    return st;
}

double sprinkle_split(double p, double p1) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameterError("p must be in [0,1]");
    if (!(p1 >= 0.0 && p1 < 1.0)) throw InvalidParameterError("p1 must be in [0,1)");
    if (p1 > p) throw InvalidParameterError("p1 must not exceed p");
    return 1.0 - (1.0 - p) / (1.0 - p1);
}

UnionCheckReport union_distribution_check(const ProductGraph& pg, double p, double p1,
                                          int trials, std::uint64_t seed) {
    if (trials < 10000) throw InvalidParameterError("union check needs at least 10^4 trials");
    if (pg.edge_count() > 65536) throw CapacityError("union check meant for small graphs");

    UnionCheckReport report;
    report.p = p;
    report.p1 = p1;
    report.p2 = sprinkle_split(p, p1);
    report.trials = trials;

    std::vector<ProductGraph::EdgeId> ids;
    ids.reserve(pg.edge_count());
    for (ProductGraph::Vertex v = 0; v < pg.vertex_count(); ++v)
        pg.for_each_neighbor(v, [&](ProductGraph::Vertex nb, ProductGraph::EdgeId id) {
            if (nb > v) ids.push_back(id);
        });

    std::vector<std::uint32_t> union_hits(ids.size(), 0);
    std::vector<std::uint32_t> direct_hits(ids.size(), 0);
    bool identical = true;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
        const CoinFlip round1(s, p1);
        const CoinFlip round2(s ^ kSprinkleSeedXor, report.p2);
        const CoinFlip direct(s, p);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const bool in_union = round1.open(ids[i]) || round2.open(ids[i]);
            const bool in_direct = direct.open(ids[i]);
            union_hits[i] += in_union;
            direct_hits[i] += in_direct;
            identical = identical && (in_union == in_direct);
        }
    }

    report.identical_draws = identical;
    report.tolerance = 4.0 * std::sqrt(p * (1.0 - p) / trials);
    report.union_freq.resize(ids.size());
    report.direct_freq.resize(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        report.union_freq[i] = static_cast<double>(union_hits[i]) / trials;
        report.direct_freq[i] = static_cast<double>(direct_hits[i]) / trials;
        report.max_union_dev = std::max(report.max_union_dev, std::fabs(report.union_freq[i] - p));
        report.max_direct_dev =
            std::max(report.max_direct_dev, std::fabs(report.direct_freq[i] - p));
    }
    report.pass =
        report.max_union_dev <= report.tolerance && report.max_direct_dev <= report.tolerance;
    return report;
}

ExploreResult explore_component(const ProductGraph& pg, ProductGraph::Vertex start,
                                const PercolationSample& sample, std::uint64_t cap) {
    using Vertex = ProductGraph::Vertex;
    if (start >= pg.vertex_count()) throw InvalidParameterError("start vertex out of range");
    if (cap < 1) throw InvalidParameterError("exploration cap must be positive");

    const CoinFlip coin(sample.seed, sample.p);
    std::unordered_set<Vertex> discovered{start};
    std::deque<Vertex> active{start};
    std::uint64_t processed = 1;

    while (!active.empty() && processed < cap) {
        const Vertex v = active.front();
        active.pop_front();
        pg.for_each_neighbor(v, [&](Vertex nb, ProductGraph::EdgeId id) {
            if (processed >= cap) return;
            if (!discovered.contains(nb) && coin.open(id)) {
                discovered.insert(nb);
                ++processed;
                active.push_back(nb);
            }
        });
    }
    return ExploreResult{processed, processed == cap};
}

}  // namespace prodperc
