#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prodperc/rational.hpp"

namespace prodperc {

enum class GraphFamily { complete, cycle, path, edge };

const char* family_name(GraphFamily kind);

// One factor of a Cartesian product: a small explicit simple graph with
// dense vertex ids [0, n). Construction rejects loops, duplicate edges and
// out-of-range endpoints; adjacency lists come out sorted. Instances are
// immutable after construction and safe to share across threads.
class FactorGraph {
public:
    FactorGraph(std::string label, int vertex_count, std::span<const std::pair<int, int>> edges);

    const std::string& label() const { return label_; }
    int vertex_count() const { return static_cast<int>(adj_.size()); }
    std::int64_t edge_count() const { return edge_count_; }
    std::span<const int> neighbors(int v) const;
    int degree(int v) const;
    int max_degree() const;

    // Edge list (u,v) with u < v, lexicographic order.
    std::vector<std::pair<int, int>> edges() const;

private:
    std::string label_;
    std::vector<std::vector<int>> adj_;
    std::int64_t edge_count_ = 0;
};

// Built-in families: complete -> K_k, cycle -> C_k, path -> P_k,
// edge -> K_2 (only k = 2 accepted). k = 2 collapses every family to K_2.
FactorGraph build_named(GraphFamily kind, int k);

// True iff a single traversal from vertex 0 reaches every vertex.
bool is_connected(const FactorGraph& g);

// Exact 2|E| / |V|.
Rational average_degree(const FactorGraph& g);

// Orders of all connected components, largest first.
std::vector<int> component_sizes(const FactorGraph& g);

struct ValidationReport {
    bool symmetric = false;
    bool connected = false;
    bool has_edge = false;
    int max_degree = 0;
    int degree_cap = 0;
    bool degree_within_cap = false;

    bool pass() const { return symmetric && connected && has_edge && degree_within_cap; }
};

// Report-style check that g can serve as a product factor under the given
// max-degree cap.
ValidationReport validate(const FactorGraph& g, int max_degree_cap);

}  // namespace prodperc
