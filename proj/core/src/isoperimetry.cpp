#include "prodperc/isoperimetry.hpp"

#include <array>
#include <bit>
#include <stdexcept>

#include "prodperc/errors.hpp"

namespace prodperc {

IsoperimetryResult isoperimetric_exact(const FactorGraph& g) {
    const int n = g.vertex_count();
    if (n < 2) throw InvalidParameterError("isoperimetric constant needs at least 2 vertices");
    if (n > 24) throw CapacityError("exhaustive isoperimetric search capped at 24 vertices");

    std::array<std::uint32_t, 24> adj{};
    std::array<int, 24> deg{};
    for (int v = 0; v < n; ++v) {
        deg[static_cast<std::size_t>(v)] = g.degree(v);
        for (int u : g.neighbors(v)) adj[static_cast<std::size_t>(v)] |= 1u << u;
    }

    const std::uint64_t total = 1ull << n;
    std::uint32_t mask = 0;
    int inside = 0;
    std::int64_t boundary = 0;

    bool have = false;
    std::uint64_t best_boundary = 0;
    int best_size = 1;
    std::uint32_t best_mask = 0;

    // Gray-code walk: step i flips vertex ctz(i), so |dS| updates by
    // deg(v) - 2 * (neighbors of v inside S).
    for (std::uint64_t i = 1; i < total; ++i) {
        const int v = std::countr_zero(i);
        const std::uint32_t bit = 1u << v;
        if (mask & bit) {
            mask ^= bit;
            const int in_nbrs = std::popcount(adj[static_cast<std::size_t>(v)] & mask);
            boundary -= deg[static_cast<std::size_t>(v)] - 2 * in_nbrs;
            --inside;
        } else {
            const int in_nbrs = std::popcount(adj[static_cast<std::size_t>(v)] & mask);
            boundary += deg[static_cast<std::size_t>(v)] - 2 * in_nbrs;
            mask ^= bit;
            ++inside;
        }
        if (inside == 0 || 2 * inside > n) continue;
        const auto b = static_cast<std::uint64_t>(boundary);
        const std::uint64_t lhs = b * static_cast<std::uint64_t>(best_size);
        const std::uint64_t rhs = best_boundary * static_cast<std::uint64_t>(inside);
        if (!have || lhs < rhs || (lhs == rhs && mask < best_mask)) {
            have = true;
            best_boundary = b;
            best_size = inside;
            best_mask = mask;
        }
    }

    IsoperimetryResult result;
    result.value = Rational(static_cast<std::int64_t>(best_boundary), best_size);
    result.boundary_size = best_boundary;
    for (int v = 0; v < n; ++v)
        if (best_mask & (1u << v)) result.witness.push_back(v);
    return result;
}

std::pair<Rational, Rational> chung_tetali_bounds(const ProductGraph& pg) {
    Rational best;
    bool have = false;
    for (int j = 0; j < pg.factor_count(); ++j) {
        const Rational value = isoperimetric_exact(pg.factor(j)).value;
        if (!have || value < best) {
            best = value;
            have = true;
        }
    }
    return {best.half(), best};
}

SandwichReport verify_sandwich(const ProductGraph& pg) {
    SandwichReport report;
    const auto [lower, upper] = chung_tetali_bounds(pg);
    report.lower = lower;
    report.upper = upper;
    const auto exact = isoperimetric_exact(pg.materialize());
    report.exact = exact.value;
    report.witness = exact.witness;
    report.pass = lower <= report.exact && report.exact <= upper;
    return report;
}

namespace {

// Largest component of a masked graph, bitmask BFS.
int mask_largest_component(std::span<const std::uint32_t> adj, int n) {
    const std::uint32_t full = n == 32 ? 0xFFFFFFFFu : ((1u << n) - 1);
    std::uint32_t left = full;
    int best = 0;
    while (left) {
        std::uint32_t reached = left & (~left + 1);  // lowest remaining vertex
        for (;;) {
            std::uint32_t grown = reached;
            std::uint32_t scan = reached;
            while (scan) {
                const int v = std::countr_zero(scan);
                scan &= scan - 1;
                grown |= adj[static_cast<std::size_t>(v)];
            }
            grown &= left;
            if (grown == reached) break;
            reached = grown;
        }
        best = std::max(best, std::popcount(reached));
        left &= ~reached;
    }
    return best;
}

bool mask_subset_connected(std::span<const std::uint32_t> adj, std::uint32_t sub) {
    if (sub == 0) return false;
    std::uint32_t reached = sub & (~sub + 1);
    for (;;) {
        std::uint32_t grown = reached;
        std::uint32_t scan = reached;
        while (scan) {
            const int v = std::countr_zero(scan);
            scan &= scan - 1;
            grown |= adj[static_cast<std::size_t>(v)];
        }
        grown &= sub;
        if (grown == reached) break;
        reached = grown;
    }
    return reached == sub;
}

}  // namespace

BalancedCutChecker::BalancedCutChecker(const FactorGraph& h) : n_(h.vertex_count()) {
    if (n_ <= 32) {
        adj_masks_.assign(static_cast<std::size_t>(n_), 0);
        for (int v = 0; v < n_; ++v)
            for (int u : h.neighbors(v)) adj_masks_[static_cast<std::size_t>(v)] |= 1u << u;
        largest_component_ = mask_largest_component(adj_masks_, n_);
    } else {
        adj_lists_.reserve(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) {
            const auto nb = h.neighbors(v);
            adj_lists_.emplace_back(nb.begin(), nb.end());
        }
        const auto sizes = component_sizes(h);
        largest_component_ = sizes.empty() ? 0 : sizes.front();
    }
    if (!adj_masks_.empty() && n_ <= 13) {
        // has_crossing_[sub]: some edge leaves the subset. Makes repeated
        // partition checks on one small graph cheap.
        has_crossing_.assign(1u << n_, 0);
        const std::uint32_t full = (1u << n_) - 1;
        for (std::uint32_t sub = 1; sub < (1u << n_); ++sub) {
            std::uint32_t scan = sub;
            while (scan) {
                const int v = std::countr_zero(scan);
                scan &= scan - 1;
                if (adj_masks_[static_cast<std::size_t>(v)] & full & ~sub) {
                    has_crossing_[sub] = 1;
                    break;
                }
            }
        }
    }
}

BalancedCutChecker::BalancedCutChecker(std::span<const std::uint32_t> adj_masks)
    : n_(static_cast<int>(adj_masks.size())), adj_masks_(adj_masks.begin(), adj_masks.end()) {
    if (n_ < 1 || n_ > 32) throw InvalidParameterError("mask form limited to 1..32 vertices");
    largest_component_ = mask_largest_component(adj_masks_, n_);
    if (n_ <= 13) {
        has_crossing_.assign(1u << n_, 0);
        const std::uint32_t full = n_ == 32 ? 0xFFFFFFFFu : ((1u << n_) - 1);
        for (std::uint32_t sub = 1; sub < (1u << n_); ++sub) {
            std::uint32_t scan = sub;
            while (scan) {
                const int v = std::countr_zero(scan);
                scan &= scan - 1;
                if (adj_masks_[static_cast<std::size_t>(v)] & full & ~sub) {
                    has_crossing_[sub] = 1;
                    break;
                }
            }
        }
    }
}

BalancedCutResult BalancedCutChecker::check(const std::vector<std::vector<int>>& cells) const {
    if (!adj_masks_.empty()) {
        std::vector<std::uint32_t> masks;
        masks.reserve(cells.size());
        for (const auto& cell : cells) {
            std::uint32_t m = 0;
            for (int v : cell) {
                if (v < 0 || v >= n_) throw InvalidParameterError("cell vertex out of range");
                m |= 1u << v;
            }
            if (std::popcount(m) != static_cast<int>(cell.size()))
                throw InvalidParameterError("repeated vertex inside a cell");
            masks.push_back(m);
        }
        return check_small(masks);
    }
    return check_generic(cells);
}

BalancedCutResult BalancedCutChecker::check_masks(std::span<const std::uint32_t> cells) const {
    if (adj_masks_.empty())
        throw InvalidParameterError("mask-form check needs a graph with <= 32 vertices");
    return check_small(cells);
}

BalancedCutResult BalancedCutChecker::check_small(std::span<const std::uint32_t> cells) const {
    const int k = static_cast<int>(cells.size());
    if (k < 1) throw InvalidParameterError("partition needs at least one cell");
    if (k > kMaxCells) throw CapacityError("balanced-cut check capped at 20 cells");

    const std::uint32_t full = n_ == 32 ? 0xFFFFFFFFu : ((1u << n_) - 1);
    std::uint32_t covered = 0;
    std::array<int, kMaxCells> sizes{};
    for (int j = 0; j < k; ++j) {
        const std::uint32_t cell = cells[static_cast<std::size_t>(j)];
        if (cell == 0) throw InvalidParameterError("empty cell");
        if ((cell & ~full) != 0) throw InvalidParameterError("cell vertex out of range");
        if (cell & covered) throw InvalidParameterError("cells overlap");
        covered |= cell;
        if (!mask_subset_connected(adj_masks_, cell))
            throw InvalidParameterError("cell induces a disconnected subgraph");
        sizes[static_cast<std::size_t>(j)] = std::popcount(cell);
    }
    if (covered != full) throw InvalidParameterError("cells do not cover the vertex set");

    BalancedCutResult result;
    result.largest_component = largest_component_;

    const int h = n_;
    for (std::uint32_t pick = 1; pick + 1 < (1u << k); ++pick) {
        std::uint32_t unionmask = 0;
        int size = 0;
        std::uint32_t scan = pick;
        while (scan) {
            const int j = std::countr_zero(scan);
            scan &= scan - 1;
            unionmask |= cells[static_cast<std::size_t>(j)];
            size += sizes[static_cast<std::size_t>(j)];
        }
        if (3 * size < h || 3 * size > 2 * h) continue;  // exact thirds test
        bool crossing;
        if (!has_crossing_.empty()) {
            crossing = has_crossing_[unionmask] != 0;
        } else {
            crossing = false;
            std::uint32_t vs = unionmask;
            while (vs) {
                const int v = std::countr_zero(vs);
                vs &= vs - 1;
                if (adj_masks_[static_cast<std::size_t>(v)] & full & ~unionmask) {
                    crossing = true;
                    break;
                }
            }
        }
        if (!crossing) {
            for (int j = 0; j < k; ++j)
                if (pick & (1u << j)) result.witness.push_back(j);
            result.criterion_holds = false;
            return result;
        }
    }

    result.criterion_holds = true;
    if (3 * result.largest_component <= h)
        throw std::logic_error("balanced-cut criterion held but no component exceeds a third");
    return result;
}

BalancedCutResult BalancedCutChecker::check_generic(
    const std::vector<std::vector<int>>& cells) const {
    const int k = static_cast<int>(cells.size());
    if (k < 1) throw InvalidParameterError("partition needs at least one cell");
    if (k > kMaxCells) throw CapacityError("balanced-cut check capped at 20 cells");

    std::vector<int> cell_of(static_cast<std::size_t>(n_), -1);
    for (int j = 0; j < k; ++j) {
        if (cells[static_cast<std::size_t>(j)].empty()) throw InvalidParameterError("empty cell");
        for (int v : cells[static_cast<std::size_t>(j)]) {
            if (v < 0 || v >= n_) throw InvalidParameterError("cell vertex out of range");
            if (cell_of[static_cast<std::size_t>(v)] != -1)
                throw InvalidParameterError("cells overlap");
            cell_of[static_cast<std::size_t>(v)] = j;
        }
    }
    for (int v = 0; v < n_; ++v)
        if (cell_of[static_cast<std::size_t>(v)] == -1)
            throw InvalidParameterError("cells do not cover the vertex set");

    // Each cell must induce a connected subgraph.
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    for (int j = 0; j < k; ++j) {
        const auto& cell = cells[static_cast<std::size_t>(j)];
        std::vector<int> stack{cell.front()};
        seen[static_cast<std::size_t>(cell.front())] = 1;
        std::size_t reached = 0;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            ++reached;
            for (int u : adj_lists_[static_cast<std::size_t>(v)])
                if (cell_of[static_cast<std::size_t>(u)] == j && !seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = 1;
                    stack.push_back(u);
                }
        }
        if (reached != cell.size())
            throw InvalidParameterError("cell induces a disconnected subgraph");
    }

    BalancedCutResult result;
    result.largest_component = largest_component_;

    const long long h = n_;
    for (std::uint32_t pick = 1; pick + 1 < (1u << k); ++pick) {
        long long size = 0;
        for (int j = 0; j < k; ++j)
            if (pick & (1u << j)) size += static_cast<long long>(cells[static_cast<std::size_t>(j)].size());
        if (3 * size < h || 3 * size > 2 * h) continue;
        bool crossing = false;
        for (int j = 0; j < k && !crossing; ++j) {
            if (!(pick & (1u << j))) continue;
            for (int v : cells[static_cast<std::size_t>(j)]) {
                for (int u : adj_lists_[static_cast<std::size_t>(v)])
                    if (!(pick & (1u << cell_of[static_cast<std::size_t>(u)]))) {
                        crossing = true;
                        break;
                    }
                if (crossing) break;
            }
        }
        if (!crossing) {
            for (int j = 0; j < k; ++j)
                if (pick & (1u << j)) result.witness.push_back(j);
            result.criterion_holds = false;
            return result;
        }
    }

    result.criterion_holds = true;
    if (3 * result.largest_component <= h)
        throw std::logic_error("balanced-cut criterion held but no component exceeds a third");
    return result;
}

BalancedCutResult balanced_cut_check(const FactorGraph& h,
                                     const std::vector<std::vector<int>>& cells) {
    return BalancedCutChecker(h).check(cells);
}

}  // namespace prodperc
