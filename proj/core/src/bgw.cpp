#include "prodperc/bgw.hpp"

#include <cmath>

#include "prodperc/errors.hpp"

namespace prodperc {

Criticality classify(const BgwConfig& cfg) {
    const double mean = cfg.offspring_n * cfg.offspring_p;
    if (mean < 1.0) return Criticality::subcritical;
    if (mean > 1.0) return Criticality::supercritical;
    return Criticality::critical;
}

double phi(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidParameterError("phi needs eps in (0,1)");
    // Stationary point of theta + 1 - eps - (1-eps) e^theta is
    // theta* = -log(1-eps), giving the supremum -log(1-eps) - eps.
    return -std::log1p(-eps) - eps;
}

double tail_bound(std::uint64_t k, double eps) {
    if (k < 1) throw InvalidParameterError("tail bound needs k >= 1");
    return std::exp(-static_cast<double>(k) * phi(eps) / 2.0);
}

int binomial_draw(int n, double p, SplitMix64& rng) {
    if (n < 0) throw InvalidParameterError("binomial draw needs n >= 0");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameterError("binomial draw needs p in [0,1]");
    if (n == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;

    const double mean = n * p;
    if (mean <= 30.0) {
        // Inversion via the pmf recurrence; expected O(np) steps.
        const double q = std::pow(1.0 - p, n);
        if (q > 0.0) {
            const double u = rng.next_u01();
            double pmf = q;
            double cum = q;
            int k = 0;
            const double ratio = p / (1.0 - p);
            while (u > cum && k < n) {
                pmf *= static_cast<double>(n - k) / (k + 1) * ratio;
                ++k;
                cum += pmf;
            }
            return k;
        }
    }
    int count = 0;
    for (int i = 0; i < n; ++i) count += rng.next_u01() < p;
    return count;
}

TreeSize simulate_tree_size(const BgwConfig& cfg) {
    if (cfg.node_cap < 1) throw InvalidParameterError("node cap must be positive");
    SplitMix64 rng(cfg.seed);
    std::uint64_t total = 1;  // the root
    std::uint64_t pending = 1;
    while (pending > 0) {
        if (total >= cfg.node_cap) return TreeSize{total, true};
        --pending;
        const auto children =
            static_cast<std::uint64_t>(binomial_draw(cfg.offspring_n, cfg.offspring_p, rng));
        total += children;
        pending += children;
    }
    return TreeSize{total, false};
}

TailEstimate tail_estimate(const BgwConfig& cfg, std::uint64_t k, std::uint64_t trials) {
    if (cfg.node_cap < k) throw InvalidParameterError("node cap must be at least k");
    if (trials < 1000) throw InvalidParameterError("tail estimate needs at least 10^3 trials");

    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        BgwConfig trial_cfg = cfg;
        trial_cfg.seed = hash_combine(cfg.seed, t);
        hits += simulate_tree_size(trial_cfg).size >= k;
    }
    TailEstimate est;
    est.hits = hits;
    est.trials = trials;
    est.fraction = static_cast<double>(hits) / static_cast<double>(trials);
    est.stderr_ = std::sqrt(est.fraction * (1.0 - est.fraction) / static_cast<double>(trials));
    return est;
}

double chernoff_upper(int n, double p, double t) {
    if (n < 1 || !(p >= 0.0 && p <= 1.0) || !(t >= 0.0))
        throw InvalidParameterError("chernoff bound needs n >= 1, p in [0,1], t >= 0");
    if (t == 0.0) return 1.0;
    const double mean = n * p;
    return std::exp(-t * t / (2.0 * (mean + t / 3.0)));
}

double chernoff_lower(int n, double p, double t) {
    if (n < 1 || !(p >= 0.0 && p <= 1.0) || !(t >= 0.0))
        throw InvalidParameterError("chernoff bound needs n >= 1, p in [0,1], t >= 0");
    const double mean = n * p;
    if (mean <= 0.0) throw InvalidParameterError("lower-tail bound needs np > 0");
    if (t == 0.0) return 1.0;
    return std::exp(-t * t / (2.0 * mean));
}

}  // namespace prodperc
