#include "prodperc/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "prodperc/bgw.hpp"
#include "prodperc/config.hpp"
#include "prodperc/errors.hpp"
#include "prodperc/experiments.hpp"
#include "prodperc/isoperimetry.hpp"
#include "prodperc/percolation.hpp"
#include "prodperc/product_graph.hpp"
#include "prodperc/version.hpp"

namespace prodperc {

using nlohmann::json;

namespace {

json rational_json(const Rational& r) {
    return json{{"exact", r.str()}, {"value", r.to_double()}};
}

json stats_json(const ComponentStats& st) {
    json hist = json::object();
    for (const auto& [size, count] : st.size_histogram) hist[std::to_string(size)] = count;
    return json{
        {"vertex_count", st.vertex_count},
        {"component_count", st.component_count},
        {"L1", st.l1},
        {"L2", st.l2},
        {"L1_frac", static_cast<double>(st.l1) / static_cast<double>(st.vertex_count)},
        {"L2_frac", static_cast<double>(st.l2) / static_cast<double>(st.vertex_count)},
        {"size_histogram", hist},
    };
}

std::uint64_t ensure_seed(RunConfig& cfg) {
    if (!cfg.seed) {
        std::random_device rd;
        cfg.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    return *cfg.seed;
}

ProductGraph product_from_config(const RunConfig& cfg) {
    if (!cfg.graph) throw InvalidParameterError("a graph description is required (--graph)");
    GraphSpec spec = parse_graph_text(*cfg.graph);
    if (cfg.declared_c) spec.declared_c = *cfg.declared_c;
    if (cfg.declared_gamma) spec.declared_gamma = *cfg.declared_gamma;
    return build_product(spec);
}

SampleMode mode_from_config(const RunConfig& cfg, const ProductGraph& pg) {
    if (!cfg.mode || cfg.mode->empty()) return default_sample_mode(pg);
    if (*cfg.mode == "bitmask") return SampleMode::bitmask;
    if (*cfg.mode == "onthefly") return SampleMode::on_the_fly;
    throw InvalidParameterError("mode must be 'bitmask' or 'onthefly'");
}

json envelope(const std::string& command, const RunConfig& cfg) {
    return json{{"tool", "prodperc"},
                {"version", kVersion},
                {"command", command},
                {"config", json::parse(cfg.to_json_text())}};
}

void emit(std::ostream& out, json doc) { out << doc.dump(2) << "\n"; }

int cmd_product_info(RunConfig& cfg, std::ostream& out) {
    const auto pg = product_from_config(cfg);
    json factors = json::array();
    for (int j = 0; j < pg.factor_count(); ++j) factors.push_back(pg.factor(j).label());
    json doc = envelope("product-info", cfg);
    doc["result"] = json{
        {"graph", pg.describe()},
        {"factors", factors},
        {"radices", pg.radices()},
        {"vertex_count", pg.vertex_count()},
        {"edge_count", pg.edge_count()},
        {"mean_degree", pg.mean_degree().to_double()},
        {"mean_degree_exact", pg.mean_degree().str()},
        {"declared_C", pg.declared_c()},
        {"declared_gamma", pg.declared_gamma()},
        {"edge_id_bound", pg.edge_id_bound()},
    };
    emit(out, doc);
    return 0;
}

int cmd_isoperimetry(RunConfig& cfg, std::ostream& out) {
    const auto pg = product_from_config(cfg);
    json doc = envelope("isoperimetry", cfg);
    json factors = json::array();
    for (int j = 0; j < pg.factor_count(); ++j) {
        const auto iso = isoperimetric_exact(pg.factor(j));
        factors.push_back(json{{"label", pg.factor(j).label()},
                               {"value", rational_json(iso.value)},
                               {"witness", iso.witness},
                               {"boundary", iso.boundary_size}});
    }
    const auto [lower, upper] = chung_tetali_bounds(pg);
    json result{{"graph", pg.describe()},
                {"factors", factors},
                {"lower_bound", rational_json(lower)},
                {"upper_bound", rational_json(upper)}};
    bool sandwich_failed = false;
    if (pg.vertex_count() <= 24) {
        const auto report = verify_sandwich(pg);
        result["product_value"] = rational_json(report.exact);
        result["witness"] = report.witness;
        result["sandwich_pass"] = report.pass;
        sandwich_failed = !report.pass;
    } else {
        result["product_value"] = nullptr;
        result["note"] = "product too large for exhaustive search; bounds only";
    }
    doc["result"] = result;
    emit(out, doc);
    return sandwich_failed ? 1 : 0;
}

int cmd_percolate(RunConfig& cfg, std::ostream& out) {
    if (!cfg.p) throw InvalidParameterError("--p is required");
    const auto pg = product_from_config(cfg);
    const std::uint64_t seed = ensure_seed(cfg);
    const auto mode = mode_from_config(cfg, pg);
    cfg.mode = sample_mode_name(mode);
    const auto stats = component_stats(pg, PercolationSample{seed, *cfg.p, mode});
    json doc = envelope("percolate", cfg);
    doc["result"] = stats_json(stats);
    doc["result"]["graph"] = pg.describe();
    doc["result"]["p"] = *cfg.p;
    doc["result"]["seed"] = seed;
    doc["result"]["mode"] = sample_mode_name(mode);
    emit(out, doc);
    return 0;
}

int cmd_explore(RunConfig& cfg, std::ostream& out) {
    if (!cfg.p) throw InvalidParameterError("--p is required");
    const auto pg = product_from_config(cfg);
    const std::uint64_t seed = ensure_seed(cfg);
    const std::uint64_t start = cfg.start.value_or(0);
    const std::uint64_t cap = cfg.cap.value_or(pg.vertex_count());
    const auto result =
        explore_component(pg, start, PercolationSample{seed, *cfg.p, SampleMode::on_the_fly}, cap);
    json doc = envelope("explore", cfg);
    doc["result"] = json{{"graph", pg.describe()}, {"p", *cfg.p},         {"seed", seed},
                         {"start", start},         {"cap", cap},          {"processed", result.processed},
                         {"reached_cap", result.reached_cap}};
    emit(out, doc);
    return 0;
}

int cmd_bgw(RunConfig& cfg, std::ostream& out) {
    if (!cfg.n || !cfg.p || !cfg.k) throw InvalidParameterError("--n, --p and --k are required");
    const int n = *cfg.n;
    const double p = *cfg.p;
    const auto k = static_cast<std::uint64_t>(*cfg.k);
    const auto trials = static_cast<std::uint64_t>(cfg.trials.value_or(100000));
    const std::uint64_t seed = ensure_seed(cfg);
    const double mean = n * p;
    if (!(mean > 0.0 && mean < 1.0))
        throw InvalidParameterError("tail bound needs subcritical offspring: 0 < n*p < 1");
    const double eps = 1.0 - mean;
    const std::uint64_t cap = cfg.cap.value_or(std::max<std::uint64_t>(k, 1024));

    const BgwConfig bgw_cfg{n, p, cap, seed};
    const auto est = tail_estimate(bgw_cfg, k, trials);
    const double bound = tail_bound(k, eps);
    const bool pass = est.fraction <= bound + 4.0 * est.stderr_;

    json doc = envelope("bgw", cfg);
    doc["result"] = json{{"offspring_n", n},
                         {"offspring_p", p},
                         {"mean_offspring", mean},
                         {"eps", eps},
                         {"k", k},
                         {"trials", trials},
                         {"node_cap", cap},
                         {"seed", seed},
                         {"phi", phi(eps)},
                         {"bound", bound},
                         {"estimate", est.fraction},
                         {"stderr", est.stderr_},
                         {"pass", pass}};
    emit(out, doc);
    return pass ? 0 : 1;
}

std::vector<double> grid_from_config(const RunConfig& cfg) {
    if (cfg.grid) return *cfg.grid;
    if (cfg.grid_min && cfg.grid_max && cfg.grid_points) {
        const int points = *cfg.grid_points;
        if (points < 2) throw InvalidParameterError("grid needs at least 2 points");
        std::vector<double> grid;
        for (int i = 0; i < points; ++i)
            grid.push_back(*cfg.grid_min +
                           (*cfg.grid_max - *cfg.grid_min) * i / static_cast<double>(points - 1));
        return grid;
    }
    throw InvalidParameterError("provide --grid or --grid-min/--grid-max/--grid-points");
}

int cmd_sweep(RunConfig& cfg, std::ostream& out) {
    const auto pg = product_from_config(cfg);
    const auto grid = grid_from_config(cfg);
    const int trials = cfg.trials.value_or(20);
    const std::uint64_t seed = ensure_seed(cfg);
    const bool coupled = cfg.coupled.value_or(true);
    const auto result = sweep(pg, grid, trials, seed, coupled, cfg.threads.value_or(0));
    const std::string csv = sweep_to_csv(result);

    if (cfg.out && *cfg.out == "-") {
        out << csv;  // stream CSV; the JSON summary is omitted
        return 0;
    }
    if (cfg.out) {
        std::ofstream file(*cfg.out, std::ios::binary);
        if (!file) throw InvalidParameterError("cannot write '" + *cfg.out + "'");
        file << csv;
    }

    json points = json::array();
    for (const auto& s : result.summary())
        points.push_back(json{{"p", s.p},
                              {"trials", s.trials},
                              {"mean_L1_frac", s.mean_l1},
                              {"min_L1_frac", s.min_l1},
                              {"max_L1_frac", s.max_l1},
                              {"stddev_L1_frac", s.stddev_l1},
                              {"mean_L2_frac", s.mean_l2},
                              {"max_L2_frac", s.max_l2}});
    json doc = envelope("sweep", cfg);
    doc["result"] = json{{"graph", result.graph_label},
                         {"coupled", result.coupled},
                         {"base_seed", result.base_seed},
                         {"points", points}};
    if (cfg.out) doc["result"]["csv"] = *cfg.out;
    emit(out, doc);
    return 0;
}

int cmd_subcritical(RunConfig& cfg, std::ostream& out) {
    if (!cfg.eps) throw InvalidParameterError("--eps is required");
    const auto pg = product_from_config(cfg);
    const int trials = cfg.trials.value_or(20);
    const std::uint64_t seed = ensure_seed(cfg);
    const auto check = subcritical_check(pg, *cfg.eps, trials, seed, cfg.threads.value_or(0));
    json doc = envelope("subcritical", cfg);
    doc["result"] = json{{"graph", pg.describe()},
                         {"eps", check.epsilon},
                         {"C", check.degree_cap},
                         {"n", check.factor_count},
                         {"p", check.p},
                         {"bound_value", check.bound_value},
                         {"observed_max_L1_frac", check.observed_max_l1_frac},
                         {"trials", check.trials},
                         {"seed", check.base_seed},
                         {"pass", check.pass}};
    emit(out, doc);
    return check.pass ? 0 : 1;
}

int cmd_supercritical(RunConfig& cfg, std::ostream& out) {
    if (!cfg.eps) throw InvalidParameterError("--eps is required");
    const auto pg = product_from_config(cfg);
    const int trials = cfg.trials.value_or(20);
    const double c_floor = cfg.c_floor.value_or(0.01);
    const std::uint64_t seed = ensure_seed(cfg);
    const auto report =
        supercritical_check(pg, *cfg.eps, trials, seed, c_floor, cfg.threads.value_or(0));
    json doc = envelope("supercritical", cfg);
    doc["result"] = json{{"graph", pg.describe()},
                         {"eps", report.epsilon},
                         {"p", report.p},
                         {"clamped_p", report.clamped_p},
                         {"within_proof_range", report.within_proof_range},
                         {"min_L1_frac", report.min_l1_frac},
                         {"mean_L1_frac", report.mean_l1_frac},
                         {"mean_L2_over_L1", report.mean_l2_over_l1},
                         {"c_floor", report.c_floor},
                         {"trials", report.trials},
                         {"seed", report.base_seed},
                         {"pass", report.pass}};
    emit(out, doc);
    return report.pass ? 0 : 1;
}

int cmd_counterexample(RunConfig& cfg, std::ostream& out) {
    if (!cfg.n_factors || !cfg.cycle_len)
        throw InvalidParameterError("--n-factors and --cycle-len are required");
    const int trials = cfg.trials.value_or(5);
    const std::uint64_t seed = ensure_seed(cfg);
    const auto report = counterexample_run(*cfg.n_factors, *cfg.cycle_len, trials, seed);
    json doc = envelope("counterexample", cfg);
    doc["result"] = json{{"n_factors", report.n_factors},
                         {"cycle_len", report.cycle_len},
                         {"p", report.p},
                         {"vertex_count", report.vertex_count},
                         {"expected_closed_rungs", report.expected_closed_rungs},
                         {"mean_closed_rungs", report.mean_closed_rungs},
                         {"tolerance", report.tolerance},
                         {"closed_rungs_per_trial", report.closed_rungs_per_trial},
                         {"L1_frac_per_trial", report.l1_frac_per_trial},
                         {"count_within_tolerance", report.count_within_tolerance},
                         {"cut_implication_ok", report.cut_implication_ok},
                         {"trials", report.trials},
                         {"seed", report.seed}};
    emit(out, doc);
    return report.count_within_tolerance && report.cut_implication_ok ? 0 : 1;
}

int cmd_selftest(RunConfig& cfg, std::ostream& out) {
    const std::uint64_t seed = cfg.seed.value_or(1);
    cfg.seed = seed;
    const auto report = run_selftest(seed);
    json suites = json::array();
    for (const auto& s : report.suites)
        suites.push_back(json{{"name", s.name}, {"pass", s.pass}, {"detail", s.detail}});
    json doc = envelope("selftest", cfg);
    doc["result"] = json{{"suites", suites}, {"pass", report.pass}};
    emit(out, doc);
    return report.pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"bond percolation on Cartesian products of graphs"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON file with default parameters");

    RunConfig flags;
    auto add_graph = [&](CLI::App* cmd, bool positional) {
        cmd->add_option("--graph", flags.graph,
                        "graph: hypercube(N), inline JSON, or a JSON file path");
        if (positional) cmd->add_option("graph_pos", flags.graph, "graph description");
        cmd->add_option("--C", flags.declared_c, "declared max factor degree");
        cmd->add_option("--gamma", flags.declared_gamma, "declared isoperimetry decay exponent");
    };
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", flags.seed, "base seed (auto-generated when omitted)");
        cmd->add_option("--trials", flags.trials, "number of trials");
        cmd->add_option("--threads", flags.threads, "worker threads (0 = all cores)");
    };

    auto* info = app.add_subcommand("product-info", "product structure and degree data");
    add_graph(info, true);

    auto* iso = app.add_subcommand("isoperimetry", "exact constants and product bounds");
    add_graph(iso, true);

    auto* perc = app.add_subcommand("percolate", "component census of one percolation draw");
    add_graph(perc, false);
    add_common(perc);
    perc->add_option("--p", flags.p, "edge retention probability");
    perc->add_option("--mode", flags.mode, "bitmask|onthefly (default: auto)");

    auto* explore = app.add_subcommand("explore", "capped component exploration");
    add_graph(explore, false);
    add_common(explore);
    explore->add_option("--p", flags.p, "edge retention probability");
    explore->add_option("--start", flags.start, "start vertex (default 0)");
    explore->add_option("--cap", flags.cap, "processed-vertex cap (default |V|)");

    auto* bgw = app.add_subcommand("bgw", "branching-process tail estimate vs bound");
    add_common(bgw);
    bgw->add_option("--n", flags.n, "offspring binomial n");
    bgw->add_option("--p", flags.p, "offspring binomial p");
    bgw->add_option("--k", flags.k, "tail threshold");
    bgw->add_option("--cap", flags.cap, "node cap (default max(k, 1024))");

    auto* sweep_cmd = app.add_subcommand("sweep", "L1/L2 fractions over a p grid");
    add_graph(sweep_cmd, false);
    add_common(sweep_cmd);
    sweep_cmd->add_option("--grid", flags.grid, "explicit p values");
    sweep_cmd->add_option("--grid-min", flags.grid_min, "first grid point");
    sweep_cmd->add_option("--grid-max", flags.grid_max, "last grid point");
    sweep_cmd->add_option("--grid-points", flags.grid_points, "grid size");
    sweep_cmd->add_flag("--coupled,!--uncoupled", flags.coupled,
                        "reuse the seed set across grid points (default on)");
    sweep_cmd->add_option("--out", flags.out, "CSV output path ('-' streams to stdout)");

    auto* sub = app.add_subcommand("subcritical", "L1 bound check at p=(1-eps)/dbar");
    add_graph(sub, false);
    add_common(sub);
    sub->add_option("--eps", flags.eps, "eps in (0,1)");

    auto* super = app.add_subcommand("supercritical", "giant-component check at p=(1+eps)/dbar");
    add_graph(super, false);
    add_common(super);
    super->add_option("--eps", flags.eps, "eps in (0,1)");
    super->add_option("--c-floor", flags.c_floor, "required min L1/|V| (default 0.01)");

    auto* counter = app.add_subcommand("counterexample", "long-cycle fragmentation run");
    add_common(counter);
    counter->add_option("--n-factors", flags.n_factors, "number of factors (K2s plus the cycle)");
    counter->add_option("--cycle-len", flags.cycle_len, "cycle length (>= 3)");

    auto* self = app.add_subcommand("selftest", "cross-module consistency suites");
    self->add_option("--seed", flags.seed, "suite seed (default 1)");

    std::vector<const char*> argv;
    argv.push_back("prodperc");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        RunConfig cfg = flags;
        if (!config_path.empty()) cfg.merge_defaults(RunConfig::from_file(config_path));

        if (info->parsed()) return cmd_product_info(cfg, out);
        if (iso->parsed()) return cmd_isoperimetry(cfg, out);
        if (perc->parsed()) return cmd_percolate(cfg, out);
        if (explore->parsed()) return cmd_explore(cfg, out);
        if (bgw->parsed()) return cmd_bgw(cfg, out);
        if (sweep_cmd->parsed()) return cmd_sweep(cfg, out);
        if (sub->parsed()) return cmd_subcritical(cfg, out);
        if (super->parsed()) return cmd_supercritical(cfg, out);
        if (counter->parsed()) return cmd_counterexample(cfg, out);
        if (self->parsed()) return cmd_selftest(cfg, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const InvalidParameterError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace prodperc
