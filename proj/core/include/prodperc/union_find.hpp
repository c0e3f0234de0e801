#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "prodperc/errors.hpp"

namespace prodperc {

// Disjoint-set forest with path halving and union by size. 32-bit indices:
// enough for the 2^27 operational vertex cap at 8 bytes per element.
class UnionFind {
public:
    explicit UnionFind(std::uint64_t n) {
        if (n >= (1ull << 32)) throw CapacityError("union-find limited to < 2^32 elements");
        parent_.resize(n);
        size_.assign(n, 1);
        for (std::uint64_t i = 0; i < n; ++i) parent_[i] = static_cast<std::uint32_t>(i);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];  // path halving
            x = parent_[x];
        }
        return x;
    }

    // True when a and b were in different sets.
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    bool is_root(std::uint32_t x) const { return parent_[x] == x; }
    std::uint32_t component_size(std::uint32_t root) const { return size_[root]; }
    std::uint64_t element_count() const { return parent_.size(); }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

}  // namespace prodperc
