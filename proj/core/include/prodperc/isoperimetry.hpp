#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "prodperc/factor_graph.hpp"
#include "prodperc/product_graph.hpp"
#include "prodperc/rational.hpp"

namespace prodperc {

struct IsoperimetryResult {
    Rational value;                 // min |boundary| / |S| over 1 <= |S| <= |V|/2
    std::vector<int> witness;       // a subset achieving the minimum, sorted
    std::uint64_t boundary_size = 0;
};

// Exact isoperimetric constant by subset enumeration (Gray-code incremental
// boundary updates). Capped at 24 vertices; ties among optimal witnesses are
// broken by the smallest subset bitmask.
IsoperimetryResult isoperimetric_exact(const FactorGraph& g);

// (min_k i(G_k) / 2, min_k i(G_k)) over the factors of a product.
std::pair<Rational, Rational> chung_tetali_bounds(const ProductGraph& pg);

struct SandwichReport {
    Rational lower;
    Rational exact;
    Rational upper;
    std::vector<int> witness;
    bool pass = false;
};

// Materializes the product, computes the exact constant and asserts
// lower <= i(G) <= upper in rational arithmetic.
SandwichReport verify_sandwich(const ProductGraph& pg);

struct BalancedCutResult {
    bool criterion_holds = false;
    std::vector<int> witness;       // violating cell index set when !criterion_holds
    int largest_component = 0;      // L1 of the graph, always filled
};

// Checker for the balanced-empty-cut criterion: given a partition of V(h)
// into connected cells, every cell-union with between a third and two thirds
// of the vertices must have an outgoing edge; when that holds, the largest
// component of h must exceed |V(h)|/3 (verified on every call).
//
// The constructor precomputes adjacency; check() may be called for many
// different partitions of the same graph.
class BalancedCutChecker {
public:
    static constexpr int kMaxCells = 20;  // 2^k enumeration guard

    explicit BalancedCutChecker(const FactorGraph& h);

    // Compact form for graphs with <= 32 vertices: adj_masks[v] = bitmask of
    // neighbors of v. Mirrors the FactorGraph constructor but avoids building
    // one in tight enumeration loops.
    explicit BalancedCutChecker(std::span<const std::uint32_t> adj_masks);

    BalancedCutResult check(const std::vector<std::vector<int>>& cells) const;

    // Cells as vertex bitmasks; only valid for graphs with <= 32 vertices.
    BalancedCutResult check_masks(std::span<const std::uint32_t> cells) const;

    int vertex_count() const { return n_; }
    int largest_component() const { return largest_component_; }

private:
    BalancedCutResult check_small(std::span<const std::uint32_t> cells) const;
    BalancedCutResult check_generic(const std::vector<std::vector<int>>& cells) const;

    int n_ = 0;
    std::vector<std::uint32_t> adj_masks_;        // small path (n <= 32)
    std::vector<std::vector<int>> adj_lists_;     // generic path
    std::vector<std::uint8_t> has_crossing_;      // per-subset table when n <= 13
    int largest_component_ = 0;
};

// One-shot convenience wrapper.
BalancedCutResult balanced_cut_check(const FactorGraph& h,
                                     const std::vector<std::vector<int>>& cells);

}  // namespace prodperc
