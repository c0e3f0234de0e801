#pragma once

#include <cstdint>

#include "prodperc/hash.hpp"

namespace prodperc {

// Binomial Bienayme-Galton-Watson tree: every vertex independently begets
// Binomial(offspring_n, offspring_p) children.
struct BgwConfig {
    int offspring_n = 0;
    double offspring_p = 0.0;
    std::uint64_t node_cap = 0;
    std::uint64_t seed = 0;
};

enum class Criticality { subcritical, critical, supercritical };

Criticality classify(const BgwConfig& cfg);

// sup_{theta>0} (theta + 1 - eps - (1-eps) e^theta) = -log(1-eps) - eps.
double phi(double eps);

// exp(-k * phi(eps) / 2): tail bound on the total progeny of a BGW tree with
// offspring Bin(n, (1-eps)/n), n large.
double tail_bound(std::uint64_t k, double eps);

struct TreeSize {
    std::uint64_t size = 0;   // vertices born before stopping (may exceed the
                              // cap by less than one brood)
    bool truncated = false;   // the cap interrupted the process
};

TreeSize simulate_tree_size(const BgwConfig& cfg);

struct TailEstimate {
    double fraction = 0.0;
    double stderr_ = 0.0;     // binomial standard error
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
};

// Monte-Carlo estimate of P(|T| >= k). Requires node_cap >= k so the event
// is decided exactly.
TailEstimate tail_estimate(const BgwConfig& cfg, std::uint64_t k, std::uint64_t trials);

// Bin(n,p) upper tail: P(X >= E[X] + t) <= exp(-t^2 / (2(E[X] + t/3))).
double chernoff_upper(int n, double p, double t);
// Bin(n,p) lower tail: P(X <= E[X] - t) <= exp(-t^2 / (2 E[X])). Needs np > 0.
double chernoff_lower(int n, double p, double t);

// Binomial(n, p) draw; inversion for small np, Bernoulli sum otherwise.
int binomial_draw(int n, double p, SplitMix64& rng);

}  // namespace prodperc
