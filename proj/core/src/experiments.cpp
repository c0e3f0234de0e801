#include "prodperc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <mutex>
#include <sstream>
#include <thread>

#include "prodperc/bgw.hpp"
#include "prodperc/errors.hpp"
#include "prodperc/isoperimetry.hpp"
#include "prodperc/version.hpp"

namespace prodperc {

namespace {

int effective_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(0..jobs-1); each job writes only its own output slot, so results
// do not depend on scheduling.
void parallel_for(int jobs, int threads, const std::function<void(int)>& fn) {
    threads = std::min(effective_threads(threads), jobs);
    if (threads <= 1) {
        for (int i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w)
        workers.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= jobs || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        });
    for (auto& t : workers) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void append_double(std::string& out, double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
}

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double stddev_of(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : xs) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::vector<SweepPointSummary> SweepResult::summary() const {
    std::vector<SweepPointSummary> out;
    out.reserve(p_grid.size());
    for (std::size_t gi = 0; gi < p_grid.size(); ++gi) {
        SweepPointSummary s;
        s.p = p_grid[gi];
        s.trials = trials;
        std::vector<double> l1s, l2s;
        for (int t = 0; t < trials; ++t) {
            const auto& row = rows[gi * static_cast<std::size_t>(trials) + static_cast<std::size_t>(t)];
            l1s.push_back(row.l1_frac);
            l2s.push_back(row.l2_frac);
        }
        s.mean_l1 = mean_of(l1s);
        s.min_l1 = *std::min_element(l1s.begin(), l1s.end());
        s.max_l1 = *std::max_element(l1s.begin(), l1s.end());
        s.stddev_l1 = stddev_of(l1s, s.mean_l1);
        s.mean_l2 = mean_of(l2s);
        s.min_l2 = *std::min_element(l2s.begin(), l2s.end());
        s.max_l2 = *std::max_element(l2s.begin(), l2s.end());
        s.stddev_l2 = stddev_of(l2s, s.mean_l2);
        out.push_back(s);
    }
    return out;
}

SweepResult sweep(const ProductGraph& pg, std::vector<double> p_grid, int trials,
                  std::uint64_t base_seed, bool coupled, int threads) {
    if (p_grid.empty()) throw InvalidParameterError("sweep needs a non-empty grid");
    for (double p : p_grid)
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameterError("grid values must be in [0,1]");
    if (trials < 1) throw InvalidParameterError("sweep needs at least one trial");
    if (pg.vertex_count() > ProductGraph::kCensusCap)
        throw CapacityError("percolation census capped at 2^27 vertices");
    std::sort(p_grid.begin(), p_grid.end());

    SweepResult result;
    result.graph_label = pg.describe();
    result.p_grid = p_grid;
    result.trials = trials;
    result.base_seed = base_seed;
    result.coupled = coupled;
    result.rows.resize(p_grid.size() * static_cast<std::size_t>(trials));

    const auto v_count = static_cast<double>(pg.vertex_count());
    const int jobs = static_cast<int>(p_grid.size()) * trials;
    parallel_for(jobs, threads, [&](int job) {
        const int gi = job / trials;
        const int t = job % trials;
        const std::uint64_t seed =
            coupled ? base_seed + static_cast<std::uint64_t>(t)
                    : base_seed + static_cast<std::uint64_t>(gi) * static_cast<std::uint64_t>(trials) +
                          static_cast<std::uint64_t>(t);
        const auto stats = component_stats(pg, make_sample(pg, seed, p_grid[static_cast<std::size_t>(gi)]));
        auto& row = result.rows[static_cast<std::size_t>(job)];
        row.p = p_grid[static_cast<std::size_t>(gi)];
        row.trial = t;
        row.seed = seed;
        row.l1_frac = static_cast<double>(stats.l1) / v_count;
        row.l2_frac = static_cast<double>(stats.l2) / v_count;
        row.components = stats.component_count;
    });
    return result;
}

std::string sweep_to_csv(const SweepResult& r) {
    std::string out;
    out += "# prodperc ";
    out += kVersion;
    out += "\n# graph: " + r.graph_label;
    out += "\n# trials: " + std::to_string(r.trials);
    out += "\n# base_seed: " + std::to_string(r.base_seed);
    out += std::string("\n# coupled: ") + (r.coupled ? "true" : "false");
    out += "\np,trial,seed,L1_frac,L2_frac,components\n";
    for (const auto& row : r.rows) {
        append_double(out, row.p);
        out += ',';
        out += std::to_string(row.trial);
        out += ',';
        out += std::to_string(row.seed);
        out += ',';
        append_double(out, row.l1_frac);
        out += ',';
        append_double(out, row.l2_frac);
        out += ',';
        out += std::to_string(row.components);
        out += '\n';
    }
    return out;
}

std::vector<SweepRow> parse_sweep_csv(std::istream& in) {
    std::vector<SweepRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "p,trial,seed,L1_frac,L2_frac,components")
                throw InvalidParameterError("unexpected CSV header: " + line);
            header_seen = true;
            continue;
        }
        SweepRow row;
        char* cursor = line.data();
        char* end = nullptr;
        row.p = std::strtod(cursor, &end);
        if (end == cursor || *end != ',') throw InvalidParameterError("bad CSV row: " + line);
        cursor = end + 1;
        row.trial = static_cast<int>(std::strtol(cursor, &end, 10));
        if (*end != ',') throw InvalidParameterError("bad CSV row: " + line);
        cursor = end + 1;
        row.seed = std::strtoull(cursor, &end, 10);
        if (*end != ',') throw InvalidParameterError("bad CSV row: " + line);
        cursor = end + 1;
        row.l1_frac = std::strtod(cursor, &end);
        if (*end != ',') throw InvalidParameterError("bad CSV row: " + line);
        cursor = end + 1;
        row.l2_frac = std::strtod(cursor, &end);
        if (*end != ',') throw InvalidParameterError("bad CSV row: " + line);
        cursor = end + 1;
        row.components = std::strtoull(cursor, &end, 10);
        rows.push_back(row);
    }
    if (!header_seen) throw InvalidParameterError("CSV carries no header row");
    return rows;
}

BoundCheck subcritical_check(const ProductGraph& pg, double eps, int trials,
                             std::uint64_t base_seed, int threads) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidParameterError("eps must be in (0,1)");
    if (trials < 1) throw InvalidParameterError("need at least one trial");

    BoundCheck check;
    check.epsilon = eps;
    check.degree_cap = pg.declared_c();
    check.factor_count = pg.factor_count();
    check.trials = trials;
    check.base_seed = base_seed;

    const Rational d = pg.mean_degree();
    check.p = (1.0 - eps) * static_cast<double>(d.den()) / static_cast<double>(d.num());
    check.bound_value = std::exp(-eps * eps * check.factor_count /
                                 (9.0 * check.degree_cap * check.degree_cap));

    const auto v_count = static_cast<double>(pg.vertex_count());
    std::vector<double> fracs(static_cast<std::size_t>(trials), 0.0);
    parallel_for(trials, threads, [&](int t) {
        const auto stats =
            component_stats(pg, make_sample(pg, base_seed + static_cast<std::uint64_t>(t), check.p));
        fracs[static_cast<std::size_t>(t)] = static_cast<double>(stats.l1) / v_count;
    });
    check.observed_max_l1_frac = *std::max_element(fracs.begin(), fracs.end());
    check.pass = check.observed_max_l1_frac <= check.bound_value;
    return check;
}

SupercriticalReport supercritical_check(const ProductGraph& pg, double eps, int trials,
                                        std::uint64_t base_seed, double c_floor, int threads) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidParameterError("eps must be in (0,1)");
    if (!(c_floor > 0.0 && c_floor < 1.0)) throw InvalidParameterError("c_floor must be in (0,1)");
    if (trials < 1) throw InvalidParameterError("need at least one trial");

    SupercriticalReport report;
    report.epsilon = eps;
    report.within_proof_range = eps <= 0.1;
    report.c_floor = c_floor;
    report.trials = trials;
    report.base_seed = base_seed;

    const Rational d = pg.mean_degree();
    const double raw_p = (1.0 + eps) * static_cast<double>(d.den()) / static_cast<double>(d.num());
    report.clamped_p = raw_p > 1.0;
    report.p = std::min(1.0, raw_p);

    const auto v_count = static_cast<double>(pg.vertex_count());
    std::vector<double> l1(static_cast<std::size_t>(trials), 0.0);
    std::vector<double> ratio(static_cast<std::size_t>(trials), 0.0);
    parallel_for(trials, threads, [&](int t) {
        const auto stats =
            component_stats(pg, make_sample(pg, base_seed + static_cast<std::uint64_t>(t), report.p));
        l1[static_cast<std::size_t>(t)] = static_cast<double>(stats.l1) / v_count;
        ratio[static_cast<std::size_t>(t)] =
            static_cast<double>(stats.l2) / static_cast<double>(stats.l1);
    });
    report.min_l1_frac = *std::min_element(l1.begin(), l1.end());
    report.mean_l1_frac = mean_of(l1);
    report.mean_l2_over_l1 = mean_of(ratio);
    report.pass = report.min_l1_frac >= c_floor;
    return report;
}

CounterexampleReport counterexample_run(int n_factors, int cycle_len, int trials,
                                        std::uint64_t seed) {
    if (n_factors < 2) throw InvalidParameterError("counterexample needs at least 2 factors");
    if (cycle_len < 3) throw InvalidParameterError("cycle length must be at least 3");
    if (trials < 1) throw InvalidParameterError("need at least one trial");

    std::vector<FactorGraph> factors;
    for (int i = 0; i + 1 < n_factors; ++i) factors.push_back(build_named(GraphFamily::edge, 2));
    factors.push_back(build_named(GraphFamily::cycle, cycle_len));
    const ProductGraph pg(std::move(factors));

    CounterexampleReport report;
    report.n_factors = n_factors;
    report.cycle_len = cycle_len;
    report.trials = trials;
    report.seed = seed;
    report.vertex_count = pg.vertex_count();
    report.p = 2.0 / (n_factors + 1);

    const std::uint64_t cube = 1ull << (n_factors - 1);
    const double q = std::pow(1.0 - report.p, static_cast<double>(cube));
    report.expected_closed_rungs = cycle_len * q;
    report.rung_count_variance = cycle_len * q * (1.0 - q);
    report.tolerance = 4.0 * std::sqrt(report.rung_count_variance / trials);

    report.cut_implication_ok = true;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
        const CoinFlip coin(trial_seed, report.p);

        // A rung set sits over one cycle edge: the cycle coordinate is the
        // last factor, so the slab for cycle vertex a starts at a * cube.
        std::uint64_t closed_rungs = 0;
        for (int a = 0; a < cycle_len; ++a) {
            const int b = a + 1 == cycle_len ? 0 : a + 1;
            bool all_closed = true;
            for (std::uint64_t x = 0; x < cube && all_closed; ++x) {
                const auto u = x + static_cast<std::uint64_t>(a) * cube;
                const auto v = x + static_cast<std::uint64_t>(b) * cube;
                all_closed = !coin.open(pg.canonical_edge_id(u, v));
            }
            closed_rungs += all_closed;
        }
        report.closed_rungs_per_trial.push_back(closed_rungs);

        const auto stats = component_stats(pg, make_sample(pg, trial_seed, report.p));
        report.l1_frac_per_trial.push_back(static_cast<double>(stats.l1) /
                                           static_cast<double>(pg.vertex_count()));
        if (closed_rungs >= 2 && stats.l1 >= pg.vertex_count())
            report.cut_implication_ok = false;
    }

    double mean = 0.0;
    for (auto c : report.closed_rungs_per_trial) mean += static_cast<double>(c);
    report.mean_closed_rungs = mean / trials;
    report.count_within_tolerance =
        std::fabs(report.mean_closed_rungs - report.expected_closed_rungs) <= report.tolerance;
    return report;
}

ProductGraph random_small_product(SplitMix64& rng, int min_factors, int max_factors,
                                  int max_vertices) {
    if (min_factors < 1 || max_factors < min_factors)
        throw InvalidParameterError("bad factor count range");
    if (max_vertices < (1 << min_factors))
        throw InvalidParameterError("vertex budget below 2^min_factors");
    struct Candidate {
        GraphFamily kind;
        int k;
        int order;
    };
    static const Candidate pool[] = {
        {GraphFamily::edge, 2, 2},   {GraphFamily::path, 3, 3},  {GraphFamily::cycle, 3, 3},
        {GraphFamily::path, 4, 4},   {GraphFamily::cycle, 4, 4}, {GraphFamily::complete, 4, 4},
        {GraphFamily::path, 5, 5},   {GraphFamily::cycle, 5, 5}, {GraphFamily::cycle, 6, 6},
        {GraphFamily::complete, 3, 3},
    };
    // A draw can paint itself into a corner (no factor fits the remaining
    // budget); retry the whole draw when that happens.
    for (;;) {
        const int count = min_factors + static_cast<int>(rng.next_below(
                                            static_cast<std::uint64_t>(max_factors - min_factors + 1)));
        std::vector<FactorGraph> factors;
        int order = 1;
        bool ok = true;
        for (int i = 0; i < count && ok; ++i) {
            Candidate fitting[std::size(pool)];
            std::size_t fit_count = 0;
            for (const auto& c : pool)
                if (static_cast<long long>(order) * c.order <= max_vertices)
                    fitting[fit_count++] = c;
            if (fit_count == 0) {
                ok = false;
                break;
            }
            const auto& c = fitting[rng.next_below(fit_count)];
            factors.push_back(build_named(c.kind, c.k));
            order *= c.order;
        }
        if (ok) return ProductGraph(std::move(factors));
    }
}

namespace {

SelftestSuite suite(const std::string& name, bool pass, const std::string& detail) {
    return SelftestSuite{name, pass, detail};
}

}  // namespace

SelftestReport run_selftest(std::uint64_t seed) {
    SelftestReport report;
    SplitMix64 rng(seed);

    {  // encode/decode round-trip
        bool ok = true;
        for (int rep = 0; rep < 20 && ok; ++rep) {
            const auto pg = random_small_product(rng, 2, 3, 4096);
            for (int i = 0; i < 200 && ok; ++i) {
                const auto v = rng.next_below(pg.vertex_count());
                const auto coords = pg.decode(v);
                ok = pg.encode(coords) == v;
            }
        }
        report.suites.push_back(suite("encode-decode-roundtrip", ok, "20 products x 200 vertices"));
    }

    {  // census vs explicit BFS census
        bool ok = true;
        for (int rep = 0; rep < 5 && ok; ++rep) {
            const auto pg = random_small_product(rng, 2, 3, 1024);
            const auto explicit_graph = pg.materialize();
            for (int s = 0; s < 5 && ok; ++s) {
                const std::uint64_t census_seed = rng.next();
                const double p = 0.1 + 0.2 * s;
                const auto implicit_stats =
                    component_stats(pg, PercolationSample{census_seed, p, SampleMode::on_the_fly});
                const auto bfs_stats = explicit_census(explicit_graph, [&](int u, int v) {
                    return edge_open(census_seed, pg.canonical_edge_id(static_cast<std::uint64_t>(u),
                                                                       static_cast<std::uint64_t>(v)),
                                     p);
                });
                ok = implicit_stats == bfs_stats;
            }
        }
        report.suites.push_back(suite("census-vs-bfs", ok, "5 products x 5 seeds"));
    }

    {  // bitmask and on-the-fly modes agree
        bool ok = true;
        for (int rep = 0; rep < 5 && ok; ++rep) {
            const auto pg = random_small_product(rng, 2, 3, 4096);
            const std::uint64_t census_seed = rng.next();
            const auto a = component_stats(pg, PercolationSample{census_seed, 0.4, SampleMode::bitmask});
            const auto b =
                component_stats(pg, PercolationSample{census_seed, 0.4, SampleMode::on_the_fly});
            ok = a == b;
        }
        report.suites.push_back(suite("mode-equivalence", ok, "5 products"));
    }

    {  // isoperimetric sandwich on random materializable products
        bool ok = true;
        for (int rep = 0; rep < 10 && ok; ++rep) {
            const auto pg = random_small_product(rng, 2, 3, 24);
            ok = verify_sandwich(pg).pass;
        }
        report.suites.push_back(suite("isoperimetric-sandwich", ok, "10 random products"));
    }

    {  // coupled monotone L1 along a grid
        const auto pg = hypercube(8);
        const auto result = sweep(pg, {0.05, 0.1, 0.15, 0.2, 0.3}, 5, rng.next(), true);
        bool ok = true;
        const auto points = result.summary();
        for (std::size_t i = 1; i < points.size(); ++i)
            ok = ok && points[i].mean_l1 >= points[i - 1].mean_l1;
        report.suites.push_back(suite("coupled-monotone-l1", ok, "H_8, 5-point grid"));
    }

    {  // phi closed form vs numeric maximization
        bool ok = true;
        for (double eps = 0.05; eps < 1.0 && ok; eps += 0.05) {
            auto g = [&](double theta) { return theta + 1.0 - eps - (1.0 - eps) * std::exp(theta); };
            double lo = 0.0, hi = 10.0;
            for (int it = 0; it < 200; ++it) {
                const double m1 = lo + (hi - lo) / 3.0;
                const double m2 = hi - (hi - lo) / 3.0;
                if (g(m1) < g(m2))
                    lo = m1;
                else
                    hi = m2;
            }
            ok = std::fabs(g((lo + hi) / 2.0) - phi(eps)) < 1e-9;
        }
        report.suites.push_back(suite("phi-numeric-maximization", ok, "eps grid 0.05..0.95"));
    }

    report.pass = true;
    for (const auto& s : report.suites) report.pass = report.pass && s.pass;
    return report;
}

}  // namespace prodperc
