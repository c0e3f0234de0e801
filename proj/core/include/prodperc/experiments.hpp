#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "prodperc/hash.hpp"
#include "prodperc/percolation.hpp"
#include "prodperc/product_graph.hpp"

namespace prodperc {

struct SweepRow {
    double p = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    double l1_frac = 0.0;
    double l2_frac = 0.0;
    std::uint64_t components = 0;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepPointSummary {
    double p = 0.0;
    int trials = 0;
    double mean_l1 = 0.0, min_l1 = 0.0, max_l1 = 0.0, stddev_l1 = 0.0;
    double mean_l2 = 0.0, min_l2 = 0.0, max_l2 = 0.0, stddev_l2 = 0.0;
};

struct SweepResult {
    std::string graph_label;
    std::vector<double> p_grid;  // ascending
    int trials = 0;
    std::uint64_t base_seed = 0;
    bool coupled = true;
    std::vector<SweepRow> rows;  // grid-major, trial-minor

    std::vector<SweepPointSummary> summary() const;
};

// Census per (p, trial). Coupled sweeps reuse the seed set base_seed + i
// across grid points, which makes mean L1 fractions exactly monotone in p
// under the threshold coupling of the edge coins.
SweepResult sweep(const ProductGraph& pg, std::vector<double> p_grid, int trials,
                  std::uint64_t base_seed, bool coupled, int threads = 0);

// CSV: comment header lines with tool version and parameters, then
// p,trial,seed,L1_frac,L2_frac,components. %.17g doubles round-trip exactly.
std::string sweep_to_csv(const SweepResult& r);
std::vector<SweepRow> parse_sweep_csv(std::istream& in);

struct BoundCheck {
    double epsilon = 0.0;
    int degree_cap = 0;        // C
    int factor_count = 0;      // n
    double p = 0.0;            // (1 - eps) / mean degree
    double bound_value = 0.0;  // exp(-eps^2 n / (9 C^2))
    double observed_max_l1_frac = 0.0;
    int trials = 0;
    std::uint64_t base_seed = 0;
    bool pass = false;         // every trial's L1 <= bound_value * |V|
};

BoundCheck subcritical_check(const ProductGraph& pg, double eps, int trials,
                             std::uint64_t base_seed, int threads = 0);

struct SupercriticalReport {
    double epsilon = 0.0;
    double p = 0.0;              // min(1, (1 + eps) / mean degree)
    bool clamped_p = false;
    bool within_proof_range = false;  // eps <= 0.1
    double min_l1_frac = 0.0;
    double mean_l1_frac = 0.0;
    double mean_l2_over_l1 = 0.0;
    double c_floor = 0.0;
    int trials = 0;
    std::uint64_t base_seed = 0;
    bool pass = false;           // min_l1_frac >= c_floor
};

SupercriticalReport supercritical_check(const ProductGraph& pg, double eps, int trials,
                                        std::uint64_t base_seed, double c_floor,
                                        int threads = 0);

struct CounterexampleReport {
    int n_factors = 0;
    int cycle_len = 0;
    double p = 0.0;  // 2 / (n_factors + 1)
    std::uint64_t vertex_count = 0;
    double expected_closed_rungs = 0.0;  // cycle_len * (1-p)^(2^(n-1))
    double rung_count_variance = 0.0;    // per-trial binomial variance
    std::vector<std::uint64_t> closed_rungs_per_trial;
    std::vector<double> l1_frac_per_trial;
    double mean_closed_rungs = 0.0;
    double tolerance = 0.0;              // 4 * sqrt(variance / trials)
    bool count_within_tolerance = false;
    bool cut_implication_ok = false;     // >= 2 closed rungs  =>  L1 < |V|, every trial
    int trials = 0;
    std::uint64_t seed = 0;
};

// Product of (n_factors - 1) copies of K2 with one long cycle, percolated at
// p = 2/(n_factors+1). A "rung set" is the set of parallel edges over one
// cycle edge; two fully closed rung sets cut the graph.
CounterexampleReport counterexample_run(int n_factors, int cycle_len, int trials,
                                        std::uint64_t seed);

// Random 2-3 factor product from the named families, total order bounded by
// max_vertices. Deterministic given the generator state.
ProductGraph random_small_product(SplitMix64& rng, int min_factors, int max_factors,
                                  int max_vertices);

struct SelftestSuite {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SelftestReport {
    std::vector<SelftestSuite> suites;
    bool pass = false;
};

// Cross-module consistency suites: census vs explicit BFS, bitmask vs
// on-the-fly, encode/decode, isoperimetric sandwich on random products,
// coupled monotonicity, phi against numeric maximization.
SelftestReport run_selftest(std::uint64_t seed);

}  // namespace prodperc
