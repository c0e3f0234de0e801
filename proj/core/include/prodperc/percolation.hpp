#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "prodperc/errors.hpp"
#include "prodperc/hash.hpp"
#include "prodperc/product_graph.hpp"

namespace prodperc {

enum class SampleMode { bitmask, on_the_fly };

const char* sample_mode_name(SampleMode m);

// Seed mask for the second round of a two-round exposure; the second round
// of sample seed s draws from s ^ kSprinkleSeedXor.
inline constexpr std::uint64_t kSprinkleSeedXor = 0x1BD11BDAA9FC1A22ull;

// Edge openness threshold in raw coin space: open <=> coin < ceil(p * 2^64),
// evaluated exactly (x86 long double carries a 64-bit mantissa).
inline unsigned __int128 coin_threshold(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameterError("p must be in [0,1]");
    if (p <= 0.0) return 0;
    if (p >= 1.0) return static_cast<unsigned __int128>(1) << 64;
    const long double scaled = static_cast<long double>(p) * 18446744073709551616.0L;
    auto t = static_cast<unsigned __int128>(scaled);
    if (static_cast<long double>(t) < scaled) ++t;
    return t;
}

// Deterministic per-edge coin: coin(seed, e) = mix64(mix64(seed + golden) + e).
// Open(p) compares the same 64-bit coin against a p-threshold, so for a fixed
// seed the open edge sets are nested as p grows (monotone coupling).
class CoinFlip {
public:
    CoinFlip(std::uint64_t seed, double p)
        : hashed_seed_(mix64(seed + kGolden)), threshold_(coin_threshold(p)) {}

    bool open(std::uint64_t edge_id) const {
        return static_cast<unsigned __int128>(mix64(hashed_seed_ + edge_id)) < threshold_;
    }

private:
    std::uint64_t hashed_seed_;
    unsigned __int128 threshold_;
};

bool edge_open(std::uint64_t seed, std::uint64_t edge_id, double p);

struct PercolationSample {
    std::uint64_t seed = 0;
    double p = 0.0;
    SampleMode mode = SampleMode::on_the_fly;
};

// bitmask when one bit per edge id is affordable (<= 2^33 bits), else on the fly.
SampleMode default_sample_mode(const ProductGraph& pg);

PercolationSample make_sample(const ProductGraph& pg, std::uint64_t seed, double p);

struct ComponentStats {
    std::uint64_t component_count = 0;
    std::uint64_t l1 = 0;  // largest component order
    std::uint64_t l2 = 0;  // second largest, 0 when there is one component
    std::map<std::uint64_t, std::uint64_t> size_histogram;
    std::uint64_t vertex_count = 0;

    friend bool operator==(const ComponentStats&, const ComponentStats&) = default;
};

// Exact component census of the percolated product. Both modes produce
// identical output for identical (graph, seed, p).
ComponentStats component_stats(const ProductGraph& pg, const PercolationSample& sample);

// Census of an explicit graph under a caller-supplied edge predicate, by
// plain breadth-first search. Reference route used by selftest; independent
// of the union-find census above.
ComponentStats explicit_census(const FactorGraph& g,
                               const std::function<bool(int, int)>& open);

// p2 such that (1 - p1)(1 - p2) = 1 - p.
double sprinkle_split(double p, double p1);

struct UnionCheckReport {
    double p = 0.0, p1 = 0.0, p2 = 0.0;
    int trials = 0;
    std::vector<double> union_freq;   // per edge, same order as edge enumeration
    std::vector<double> direct_freq;
    double tolerance = 0.0;           // 4 * sqrt(p(1-p)/trials)
    double max_union_dev = 0.0;
    double max_direct_dev = 0.0;
    bool identical_draws = false;     // union sample == direct sample on every trial
    bool pass = false;
};

// Draws G_{p1} union G_{p2} (second round reseeded by kSprinkleSeedXor) and
// G_p directly, and compares per-edge open frequencies against p.
UnionCheckReport union_distribution_check(const ProductGraph& pg, double p, double p1,
                                          int trials, std::uint64_t seed);

struct ExploreResult {
    std::uint64_t processed = 0;
    bool reached_cap = false;  // processed == cap
};

// FIFO exploration of the component of `start`, revealing edge coins lazily;
// stops once `cap` vertices have been discovered. processed equals
// min(|CC_p(start)|, cap) regardless of where the cap interrupts the scan.
ExploreResult explore_component(const ProductGraph& pg, ProductGraph::Vertex start,
                                const PercolationSample& sample, std::uint64_t cap);

}  // namespace prodperc
