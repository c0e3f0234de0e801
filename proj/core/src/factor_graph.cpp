#include "prodperc/factor_graph.hpp"

#include <algorithm>
#include <queue>

#include "prodperc/errors.hpp"

namespace prodperc {

const char* family_name(GraphFamily kind) {
    switch (kind) {
        case GraphFamily::complete: return "complete";
        case GraphFamily::cycle: return "cycle";
        case GraphFamily::path: return "path";
        case GraphFamily::edge: return "edge";
    }
    return "?";
}

FactorGraph::FactorGraph(std::string label, int vertex_count,
                         std::span<const std::pair<int, int>> edges)
    : label_(std::move(label)) {
    if (vertex_count < 1) throw InvalidParameterError("factor graph needs at least one vertex");
    adj_.resize(static_cast<std::size_t>(vertex_count));
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count)
            throw InvalidParameterError("edge endpoint out of range in '" + label_ + "'");
        if (u == v) throw InvalidParameterError("self-loop rejected in '" + label_ + "'");
        adj_[static_cast<std::size_t>(u)].push_back(v);
        adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& list : adj_) {
        std::sort(list.begin(), list.end());
        if (std::adjacent_find(list.begin(), list.end()) != list.end())
            throw InvalidParameterError("duplicate edge (multigraph) rejected in '" + label_ + "'");
    }
    edge_count_ = static_cast<std::int64_t>(edges.size());
}

std::span<const int> FactorGraph::neighbors(int v) const {
    if (v < 0 || v >= vertex_count()) throw InvalidParameterError("vertex id out of range");
    return adj_[static_cast<std::size_t>(v)];
}

int FactorGraph::degree(int v) const { return static_cast<int>(neighbors(v).size()); }

int FactorGraph::max_degree() const {
    int d = 0;
    for (const auto& list : adj_) d = std::max(d, static_cast<int>(list.size()));
    return d;
}

std::vector<std::pair<int, int>> FactorGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < vertex_count(); ++u)
        for (int v : adj_[static_cast<std::size_t>(u)])
            if (u < v) out.emplace_back(u, v);
    return out;
}

FactorGraph build_named(GraphFamily kind, int k) {
    if (k < 2) throw InvalidParameterError("built-in families need k >= 2");
    if (kind == GraphFamily::edge && k != 2)
        throw InvalidParameterError("family 'edge' is K2; k must be 2");

    std::string label = std::string(1, kind == GraphFamily::path ? 'P'
                                       : kind == GraphFamily::cycle ? 'C'
                                                                    : 'K') +
                        std::to_string(k);
    std::vector<std::pair<int, int>> edges;
    if (k == 2) {
        edges.emplace_back(0, 1);  // every family collapses to a single edge
        return FactorGraph(std::move(label), 2, edges);
    }
    switch (kind) {
        case GraphFamily::complete:
            for (int u = 0; u < k; ++u)
                for (int v = u + 1; v < k; ++v) edges.emplace_back(u, v);
            break;
        case GraphFamily::cycle:
            for (int u = 0; u + 1 < k; ++u) edges.emplace_back(u, u + 1);
            edges.emplace_back(0, k - 1);
            break;
        case GraphFamily::path:
            for (int u = 0; u + 1 < k; ++u) edges.emplace_back(u, u + 1);
            break;
        case GraphFamily::edge:
            break;  // unreachable, k == 2 handled above
    }
    return FactorGraph(std::move(label), k, edges);
}

namespace {

// BFS from `start` over vertices with visited[] == false; returns the order
// of the component and marks it visited.
int sweep_component(const FactorGraph& g, int start, std::vector<char>& visited) {
    std::queue<int> frontier;
    frontier.push(start);
    visited[static_cast<std::size_t>(start)] = 1;
    int count = 0;
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        ++count;
        for (int u : g.neighbors(v)) {
            if (!visited[static_cast<std::size_t>(u)]) {
                visited[static_cast<std::size_t>(u)] = 1;
                frontier.push(u);
            }
        }
    }
    return count;
}

}  // namespace

bool is_connected(const FactorGraph& g) {
    std::vector<char> visited(static_cast<std::size_t>(g.vertex_count()), 0);
    return sweep_component(g, 0, visited) == g.vertex_count();
}

Rational average_degree(const FactorGraph& g) {
    return Rational(2 * g.edge_count(), g.vertex_count());
}

std::vector<int> component_sizes(const FactorGraph& g) {
    std::vector<char> visited(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<int> sizes;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!visited[static_cast<std::size_t>(v)]) sizes.push_back(sweep_component(g, v, visited));
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

ValidationReport validate(const FactorGraph& g, int max_degree_cap) {
    if (max_degree_cap < 1) throw InvalidParameterError("max degree cap must be positive");
    ValidationReport r;
    // Construction guarantees symmetry; re-verify anyway since the report
    // promises it.
    r.symmetric = true;
    for (int v = 0; v < g.vertex_count() && r.symmetric; ++v)
        for (int u : g.neighbors(v)) {
            const auto nb = g.neighbors(u);
            if (!std::binary_search(nb.begin(), nb.end(), v) || u == v) {
                r.symmetric = false;
                break;
            }
        }
    r.connected = is_connected(g);
    r.has_edge = g.edge_count() >= 1;
    r.max_degree = g.max_degree();
    r.degree_cap = max_degree_cap;
    r.degree_within_cap = r.max_degree <= max_degree_cap;
    return r;
}

}  // namespace prodperc
