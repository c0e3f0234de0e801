#include "prodperc/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "prodperc/errors.hpp"

namespace prodperc {

using nlohmann::json;

namespace {

GraphFamily family_from_name(const std::string& name) {
    if (name == "complete") return GraphFamily::complete;
    if (name == "cycle") return GraphFamily::cycle;
    if (name == "path") return GraphFamily::path;
    if (name == "edge") return GraphFamily::edge;
    throw InvalidParameterError("unknown factor kind '" + name + "'");
}

FactorSpec factor_from_json(const json& j) {
    if (!j.is_object()) throw InvalidParameterError("factor entry must be an object");
    FactorSpec spec;
    if (j.contains("kind")) {
        for (const auto& [key, value] : j.items()) {
            (void)value;
            if (key != "kind" && key != "k")
                throw InvalidParameterError("unknown factor key '" + key + "'");
        }
        spec.named = true;
        spec.kind = family_from_name(j.at("kind").get<std::string>());
        spec.k = j.at("k").get<int>();
        return spec;
    }
    if (j.contains("edges")) {
        for (const auto& [key, value] : j.items()) {
            (void)value;
            if (key != "edges" && key != "n")
                throw InvalidParameterError("unknown factor key '" + key + "'");
        }
        spec.named = false;
        spec.n = j.at("n").get<int>();
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw InvalidParameterError("edge entries must be [u,v] pairs");
            spec.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        return spec;
    }
    throw InvalidParameterError("factor entry needs 'kind' or 'edges'");
}

GraphSpec graph_from_json(const json& j) {
    GraphSpec spec;
    const json* factors = nullptr;
    if (j.is_array()) {
        factors = &j;
    } else if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            (void)value;
            if (key != "factors" && key != "C" && key != "gamma")
                throw InvalidParameterError("unknown graph key '" + key + "'");
        }
        factors = &j.at("factors");
        if (j.contains("C")) spec.declared_c = j.at("C").get<int>();
        if (j.contains("gamma")) spec.declared_gamma = j.at("gamma").get<double>();
    } else {
        throw InvalidParameterError("graph spec must be an object or factor array");
    }
    if (!factors->is_array() || factors->empty())
        throw InvalidParameterError("graph needs a non-empty factor array");
    for (const auto& f : *factors) spec.factors.push_back(factor_from_json(f));
    return spec;
}

}  // namespace

FactorGraph FactorSpec::build() const {
    if (named) return build_named(kind, k);
    return FactorGraph(label(), n, edges);
}

std::string FactorSpec::label() const {
    if (named) {
        return std::string(1, kind == GraphFamily::path ? 'P'
                              : kind == GraphFamily::cycle ? 'C'
                                                           : 'K') +
               std::to_string(k);
    }
    return "G(" + std::to_string(n) + "v," + std::to_string(edges.size()) + "e)";
}

GraphSpec parse_graph_text(const std::string& text) {
    if (text.empty()) throw InvalidParameterError("empty graph description");

    // hypercube(N) shorthand
    if (text.rfind("hypercube(", 0) == 0 && text.back() == ')') {
        const std::string inner = text.substr(10, text.size() - 11);
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(inner, &used);
        } catch (const std::exception&) {
            throw InvalidParameterError("bad hypercube dimension '" + inner + "'");
        }
        if (used != inner.size() || n < 1)
            throw InvalidParameterError("bad hypercube dimension '" + inner + "'");
        GraphSpec spec;
        spec.text = text;
        for (int i = 0; i < n; ++i)
            spec.factors.push_back(FactorSpec{true, GraphFamily::edge, 2, 0, {}});
        return spec;
    }

    std::string payload = text;
    if (text[0] != '{' && text[0] != '[') {  // treat as a file path
        std::ifstream file(text);
        if (!file) throw InvalidParameterError("cannot open graph file '" + text + "'");
        std::ostringstream buffer;
        buffer << file.rdbuf();
        payload = buffer.str();
    }
    json j;
    try {
        j = json::parse(payload);
    } catch (const json::exception& e) {
        throw InvalidParameterError(std::string("graph JSON parse error: ") + e.what());
    }
    GraphSpec spec = graph_from_json(j);
    spec.text = text;
    return spec;
}

ProductGraph build_product(const GraphSpec& spec) {
    std::vector<FactorGraph> factors;
    factors.reserve(spec.factors.size());
    for (const auto& f : spec.factors) factors.push_back(f.build());
    return ProductGraph(std::move(factors), spec.declared_c, spec.declared_gamma);
}

namespace {

template <class T>
void read_field(const json& j, const char* key, std::optional<T>& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

template <class T>
void write_field(json& j, const char* key, const std::optional<T>& value) {
    if (value) j[key] = *value;
}

constexpr const char* kKnownKeys[] = {
    "graph",   "C",         "gamma",  "p",     "p1",     "eps",     "c_floor", "grid",
    "grid_min", "grid_max", "grid_points", "trials", "seed", "cap", "start", "k",
    "n", "n_factors", "cycle_len", "threads", "coupled", "mode", "out", "format",
};

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidParameterError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw InvalidParameterError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool known = false;
        for (const char* k : kKnownKeys) known = known || key == k;
        if (!known) throw InvalidParameterError("unknown config key '" + key + "'");
    }
    RunConfig cfg;
    read_field(j, "graph", cfg.graph);
    read_field(j, "C", cfg.declared_c);
    read_field(j, "gamma", cfg.declared_gamma);
    read_field(j, "p", cfg.p);
    read_field(j, "p1", cfg.p1);
    read_field(j, "eps", cfg.eps);
    read_field(j, "c_floor", cfg.c_floor);
    read_field(j, "grid", cfg.grid);
    read_field(j, "grid_min", cfg.grid_min);
    read_field(j, "grid_max", cfg.grid_max);
    read_field(j, "grid_points", cfg.grid_points);
    read_field(j, "trials", cfg.trials);
    read_field(j, "seed", cfg.seed);
    read_field(j, "cap", cfg.cap);
    read_field(j, "start", cfg.start);
    read_field(j, "k", cfg.k);
    read_field(j, "n", cfg.n);
    read_field(j, "n_factors", cfg.n_factors);
    read_field(j, "cycle_len", cfg.cycle_len);
    read_field(j, "threads", cfg.threads);
    read_field(j, "coupled", cfg.coupled);
    read_field(j, "mode", cfg.mode);
    read_field(j, "out", cfg.out);
    read_field(j, "format", cfg.format);
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw InvalidParameterError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return from_json_text(buffer.str());
}

std::string RunConfig::to_json_text() const {
    json j = json::object();
    write_field(j, "graph", graph);
    write_field(j, "C", declared_c);
    write_field(j, "gamma", declared_gamma);
    write_field(j, "p", p);
    write_field(j, "p1", p1);
    write_field(j, "eps", eps);
    write_field(j, "c_floor", c_floor);
    write_field(j, "grid", grid);
    write_field(j, "grid_min", grid_min);
    write_field(j, "grid_max", grid_max);
    write_field(j, "grid_points", grid_points);
    write_field(j, "trials", trials);
    write_field(j, "seed", seed);
    write_field(j, "cap", cap);
    write_field(j, "start", start);
    write_field(j, "k", k);
    write_field(j, "n", n);
    write_field(j, "n_factors", n_factors);
    write_field(j, "cycle_len", cycle_len);
    write_field(j, "threads", threads);
    write_field(j, "coupled", coupled);
    write_field(j, "mode", mode);
    write_field(j, "out", out);
    write_field(j, "format", format);
    return j.dump();
}

void RunConfig::merge_defaults(const RunConfig& defaults) {
    auto fill = [](auto& mine, const auto& theirs) {
        if (!mine && theirs) mine = theirs;
    };
    fill(graph, defaults.graph);
    fill(declared_c, defaults.declared_c);
    fill(declared_gamma, defaults.declared_gamma);
    fill(p, defaults.p);
    fill(p1, defaults.p1);
    fill(eps, defaults.eps);
    fill(c_floor, defaults.c_floor);
    fill(grid, defaults.grid);
    fill(grid_min, defaults.grid_min);
    fill(grid_max, defaults.grid_max);
    fill(grid_points, defaults.grid_points);
    fill(trials, defaults.trials);
    fill(seed, defaults.seed);
    fill(cap, defaults.cap);
    fill(start, defaults.start);
    fill(k, defaults.k);
    fill(n, defaults.n);
    fill(n_factors, defaults.n_factors);
    fill(cycle_len, defaults.cycle_len);
    fill(threads, defaults.threads);
    fill(coupled, defaults.coupled);
    fill(mode, defaults.mode);
    fill(out, defaults.out);
    fill(format, defaults.format);
}

}  // namespace prodperc
