#include "prodperc/product_graph.hpp"

#include <map>

#include "prodperc/errors.hpp"

namespace prodperc {

ProductGraph::ProductGraph(std::vector<FactorGraph> factors, int declared_c,
                           double declared_gamma)
    : factors_(std::move(factors)), declared_gamma_(declared_gamma) {
    if (factors_.empty()) throw InvalidParameterError("product needs at least one factor");

    int actual_max_degree = 0;
    for (const auto& f : factors_) actual_max_degree = std::max(actual_max_degree, f.max_degree());
    declared_c_ = declared_c == 0 ? actual_max_degree : declared_c;
    if (declared_c_ < 1) throw InvalidParameterError("declared max-degree cap must be positive");

    mean_degree_ = Rational(0);
    for (const auto& f : factors_) {
        const auto report = validate(f, declared_c_);
        if (!report.pass()) {
            throw InvalidParameterError(
                "factor '" + f.label() + "' unusable: " +
                (!report.connected ? "disconnected"
                 : !report.has_edge ? "no edges"
                                    : "max degree exceeds declared cap"));
        }
        mean_degree_ = mean_degree_ + average_degree(f);
    }

    radices_.reserve(factors_.size());
    weights_.reserve(factors_.size());
    slot_offsets_.reserve(factors_.size());
    for (const auto& f : factors_) {
        radices_.push_back(f.vertex_count());
        weights_.push_back(vertex_count_);
        const auto r = static_cast<Vertex>(f.vertex_count());
        if (vertex_count_ > kConstructCap / r)
            throw CapacityError("product exceeds 2^62 vertices");
        vertex_count_ *= r;

        slot_offsets_.push_back(slot_count_);
        slot_count_ += static_cast<std::uint64_t>(f.edge_count());
    }
    if (slot_count_ > 0 && vertex_count_ > (1ull << 63) / slot_count_)
        throw CapacityError("edge-id space exceeds 2^63");

    // edge_count = sum_j |E_j| * |V| / |V_j|
    for (std::size_t j = 0; j < factors_.size(); ++j)
        edge_count_ += static_cast<std::uint64_t>(factors_[j].edge_count()) *
                       (vertex_count_ / static_cast<Vertex>(radices_[j]));

    // Lexicographic index of each factor edge, reachable from both endpoints.
    edge_slot_.resize(factors_.size());
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        const auto& f = factors_[j];
        std::map<std::pair<int, int>, std::uint32_t> index;
        std::uint32_t next = 0;
        for (const auto& e : f.edges()) index[e] = next++;
        edge_slot_[j].resize(static_cast<std::size_t>(f.vertex_count()));
        for (int a = 0; a < f.vertex_count(); ++a) {
            const auto nbrs = f.neighbors(a);
            auto& slots = edge_slot_[j][static_cast<std::size_t>(a)];
            slots.reserve(nbrs.size());
            for (int b : nbrs) slots.push_back(index.at({std::min(a, b), std::max(a, b)}));
        }
    }
}

std::string ProductGraph::describe() const {
    std::string out;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        if (j) out += " x ";
        out += factors_[j].label();
    }
    return out;
}

ProductGraph::Vertex ProductGraph::encode(std::span<const int> coords) const {
    if (coords.size() != factors_.size())
        throw InvalidParameterError("coordinate count does not match factor count");
    Vertex v = 0;
    for (std::size_t j = 0; j < coords.size(); ++j) {
        if (coords[j] < 0 || coords[j] >= radices_[j])
            throw InvalidParameterError("coordinate out of range");
        v += static_cast<Vertex>(coords[j]) * weights_[j];
    }
    return v;
}

std::vector<int> ProductGraph::decode(Vertex v) const {
    if (v >= vertex_count_) throw InvalidParameterError("vertex index out of range");
    std::vector<int> coords(factors_.size());
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        coords[j] = static_cast<int>(v % static_cast<Vertex>(radices_[j]));
        v /= static_cast<Vertex>(radices_[j]);
    }
    return coords;
}

int ProductGraph::vertex_degree(Vertex v) const {
    if (v >= vertex_count_) throw InvalidParameterError("vertex index out of range");
    int deg = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        deg += factors_[j].degree(static_cast<int>(v % static_cast<Vertex>(radices_[j])));
        v /= static_cast<Vertex>(radices_[j]);
    }
    return deg;
}

std::vector<std::pair<ProductGraph::Vertex, ProductGraph::EdgeId>> ProductGraph::neighbors(
    Vertex v) const {
    if (v >= vertex_count_) throw InvalidParameterError("vertex index out of range");
    std::vector<std::pair<Vertex, EdgeId>> out;
    for_each_neighbor(v, [&](Vertex nb, EdgeId id) { out.emplace_back(nb, id); });
    return out;
}

ProductGraph::EdgeId ProductGraph::canonical_edge_id(Vertex u, Vertex v) const {
    if (u >= vertex_count_ || v >= vertex_count_)
        throw InvalidParameterError("vertex index out of range");
    if (u == v) throw InvalidParameterError("not a product edge");
    const Vertex lo = std::min(u, v);
    const Vertex hi = std::max(u, v);

    Vertex rem_lo = lo, rem_hi = hi;
    int changed = -1;
    int a = 0, b = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        const auto r = static_cast<Vertex>(radices_[j]);
        const int ca = static_cast<int>(rem_lo % r);
        const int cb = static_cast<int>(rem_hi % r);
        rem_lo /= r;
        rem_hi /= r;
        if (ca != cb) {
            if (changed >= 0) throw InvalidParameterError("not a product edge");
            changed = static_cast<int>(j);
            a = ca;
            b = cb;
        }
    }
    // changed >= 0 here since u != v
    const auto nbrs = factors_[static_cast<std::size_t>(changed)].neighbors(a);
    const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), b);
    if (it == nbrs.end() || *it != b) throw InvalidParameterError("not a product edge");
    const auto pos = static_cast<std::size_t>(it - nbrs.begin());
    return lo * slot_count_ + slot_offsets_[static_cast<std::size_t>(changed)] +
           edge_slot_[static_cast<std::size_t>(changed)][static_cast<std::size_t>(a)][pos];
}

FactorGraph ProductGraph::materialize() const {
    if (vertex_count_ > kMaterializeCap)
        throw CapacityError("materialize capped at 2^16 vertices");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(edge_count_));
    for (Vertex v = 0; v < vertex_count_; ++v)
        for_each_neighbor(v, [&](Vertex nb, EdgeId) {
            if (nb > v) edges.emplace_back(static_cast<int>(v), static_cast<int>(nb));
        });
    return FactorGraph("product:" + describe(), static_cast<int>(vertex_count_), edges);
}

ProductGraph hypercube(int n) {
    if (n < 1) throw InvalidParameterError("hypercube dimension must be positive");
    std::vector<FactorGraph> factors;
    factors.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) factors.push_back(build_named(GraphFamily::edge, 2));
    return ProductGraph(std::move(factors));
}

}  // namespace prodperc
