#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prodperc/factor_graph.hpp"
#include "prodperc/product_graph.hpp"

namespace prodperc {

// One factor as described in a config: a named family or an explicit edge list.
struct FactorSpec {
    bool named = true;
    GraphFamily kind = GraphFamily::edge;
    int k = 2;
    int n = 0;  // explicit form
    std::vector<std::pair<int, int>> edges;

    FactorGraph build() const;
    std::string label() const;
};

struct GraphSpec {
    std::vector<FactorSpec> factors;
    int declared_c = 0;          // 0 = derive from factors
    double declared_gamma = 0.0;
    std::string text;            // descriptor as given, echoed in outputs
};

// Accepts "hypercube(N)", an inline JSON object/array, or a path to a JSON
// file. JSON factor entries look like {"kind":"cycle","k":4} or
// {"edges":[[0,1],[1,2]],"n":3}; a graph object may carry "factors", "C"
// and "gamma" keys, or be a bare factor array.
GraphSpec parse_graph_text(const std::string& text);

ProductGraph build_product(const GraphSpec& spec);

// Flat run parameters shared by the CLI subcommands. Parsed strictly:
// unknown keys are rejected, round-trips losslessly through JSON.
struct RunConfig {
    std::optional<std::string> graph;
    std::optional<int> declared_c;
    std::optional<double> declared_gamma;
    std::optional<double> p;
    std::optional<double> p1;
    std::optional<double> eps;
    std::optional<double> c_floor;
    std::optional<std::vector<double>> grid;
    std::optional<double> grid_min;
    std::optional<double> grid_max;
    std::optional<int> grid_points;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> cap;
    std::optional<std::uint64_t> start;
    std::optional<int> k;
    std::optional<int> n;
    std::optional<int> n_factors;
    std::optional<int> cycle_len;
    std::optional<int> threads;
    std::optional<bool> coupled;
    std::optional<std::string> mode;
    std::optional<std::string> out;
    std::optional<std::string> format;

    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_file(const std::string& path);
    std::string to_json_text() const;

    // Fill unset fields from `defaults`.
    void merge_defaults(const RunConfig& defaults);

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

}  // namespace prodperc
