#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prodperc/factor_graph.hpp"
#include "prodperc/rational.hpp"

namespace prodperc {

// Implicit Cartesian product of factor graphs. A vertex is a mixed-radix
// integer index over the factor vertex counts, least-significant factor
// first; neighbors are enumerated on demand and never stored.
//
// Edge ids: every product edge is charged to its smaller endpoint u and to
// the factor edge {a,b} it projects to. With S = sum of factor edge counts
// and off[j] the prefix sum over factors,
//
//   id = u * S + off[j] + lex_index_j({a,b})
//
// Ids are symmetric in the endpoints, injective over edges, and bounded by
// vertex_count * S (sparse: fine as a bitmask offset, coins are hash-based).
class ProductGraph {
public:
    using Vertex = std::uint64_t;
    using EdgeId = std::uint64_t;

    // Largest product that may be constructed at all (index arithmetic).
    static constexpr Vertex kConstructCap = 1ull << 62;
    // Largest product a percolation census will accept.
    static constexpr Vertex kCensusCap = 1ull << 27;
    // Largest product materialize() will expand.
    static constexpr Vertex kMaterializeCap = 1ull << 16;

    // Every factor must pass validate() under the declared max-degree cap.
    // declared_c == 0 means "use the actual maximum factor degree".
    explicit ProductGraph(std::vector<FactorGraph> factors, int declared_c = 0,
                          double declared_gamma = 0.0);

    int factor_count() const { return static_cast<int>(factors_.size()); }
    const FactorGraph& factor(int j) const { return factors_[j]; }
    const std::vector<int>& radices() const { return radices_; }
    Vertex vertex_count() const { return vertex_count_; }
    std::uint64_t edge_count() const { return edge_count_; }
    Rational mean_degree() const { return mean_degree_; }
    int declared_c() const { return declared_c_; }
    double declared_gamma() const { return declared_gamma_; }

    // Exclusive upper bound on edge ids: vertex_count * (total edge slots).
    EdgeId edge_id_bound() const { return vertex_count_ * slot_count_; }

    // "K2 x K2 x C4"
    std::string describe() const;

    Vertex encode(std::span<const int> coords) const;
    std::vector<int> decode(Vertex v) const;

    int vertex_degree(Vertex v) const;

    // All product edges at v, canonical order (factor-major, then sorted
    // factor adjacency). Length equals vertex_degree(v).
    std::vector<std::pair<Vertex, EdgeId>> neighbors(Vertex v) const;

    // Allocation-free neighbor walk; fn(neighbor, edge_id).
    template <class Fn>
    void for_each_neighbor(Vertex v, Fn&& fn) const {
        Vertex rem = v;
        for (std::size_t j = 0; j < factors_.size(); ++j) {
            const int radix = radices_[j];
            const int a = static_cast<int>(rem % static_cast<Vertex>(radix));
            rem /= static_cast<Vertex>(radix);
            const auto nbrs = factors_[j].neighbors(a);
            const auto& slots = edge_slot_[j][a];
            const std::int64_t w = static_cast<std::int64_t>(weights_[j]);
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                const Vertex nb =
                    static_cast<Vertex>(static_cast<std::int64_t>(v) + (nbrs[i] - a) * w);
                const EdgeId id =
                    std::min(nb, v) * slot_count_ + slot_offsets_[j] + slots[i];
                fn(nb, id);
            }
        }
    }

    EdgeId canonical_edge_id(Vertex u, Vertex v) const;

    // Explicit graph isomorphic to the product; vertex ids are the product
    // vertex indices. Guarded by kMaterializeCap.
    FactorGraph materialize() const;

private:
    std::vector<FactorGraph> factors_;
    std::vector<int> radices_;
    std::vector<Vertex> weights_;  // mixed-radix place values
    Vertex vertex_count_ = 1;
    std::uint64_t edge_count_ = 0;
    Rational mean_degree_;
    int declared_c_ = 0;
    double declared_gamma_ = 0.0;

    std::uint64_t slot_count_ = 0;              // sum of factor edge counts
    std::vector<std::uint64_t> slot_offsets_;   // per-factor prefix sums
    // edge_slot_[j][a][i] = lex index of factor edge {a, adj[a][i]} in factor j
    std::vector<std::vector<std::vector<std::uint32_t>>> edge_slot_;
};

// n-dimensional hypercube: n copies of K2.
ProductGraph hypercube(int n);

}  // namespace prodperc
