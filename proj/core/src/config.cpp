#include "cuma/config.hpp"

#include "cuma/error.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace cuma {

namespace {

void reject_unknown(const YAML::Node& node, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) {
            throw DomainError("config: unknown key '" + key + "' in " + where);
        }
    }
}

template <typename T>
void read(const YAML::Node& node, const char* key, T& out) {
    if (node[key]) {
        out = node[key].as<T>();
    }
}

PortGrid read_grid(const YAML::Node& g) {
    if (!g.IsMap()) {
        throw DomainError("config: grid must be a mapping");
    }
    reject_unknown(g, {"n1", "n2", "w1", "w2"}, "grid");
    return make_grid(g["n1"].as<int>(), g["n2"].as<int>(), g["w1"].as<double>(), g["w2"].as<double>());
}

SweepSpec read_sweep(const YAML::Node& n, const ScenarioConfig& base) {
    reject_unknown(n, {"recipe", "name", "axis", "values", "metrics", "series", "exact", "exact_max_users",
                       "mc_max_ports", "trials"},
                   "sweep");
    SweepSpec s;
    if (n["recipe"]) {
        s = figure_recipe(n["recipe"].as<std::string>());
    }
    s.users = base.users;
    s.rs = base.rs;
    s.gamma_th = base.gamma_th;
    s.omega = base.omega;
    read(n, "trials", s.trials);
    s.seed = base.seed;
    s.quad_tol = base.quad_tol;
    read(n, "name", s.name);
    if (n["axis"]) {
        s.axis = parse_axis(n["axis"].as<std::string>());
    }
    if (n["values"]) {
        s.axis_values = n["values"].as<std::vector<double>>();
    }
    if (n["metrics"]) {
        s.metrics.clear();
        for (const auto& m : n["metrics"]) {
            s.metrics.push_back(parse_metric(m.as<std::string>()));
        }
    }
    if (n["series"]) {
        s.series.clear();
        for (const auto& e : n["series"]) {
            reject_unknown(e, {"label", "preset", "grid", "eve_preset", "delta_b", "delta_e"}, "sweep.series");
            SeriesSpec ss;
            read(e, "label", ss.label);
            read(e, "preset", ss.preset);
            if (e["grid"]) {
                ss.grid = read_grid(e["grid"]);
            }
            ss.eve_preset = base.eve_preset;
            read(e, "eve_preset", ss.eve_preset);
            ss.delta_b = base.delta;
            ss.delta_e = base.delta_e;
            read(e, "delta_b", ss.delta_b);
            read(e, "delta_e", ss.delta_e);
            s.series.push_back(ss);
        }
    }
    read(n, "exact", s.analytic_exact);
    read(n, "exact_max_users", s.exact_max_users);
    read(n, "mc_max_ports", s.mc_max_ports);
    return s;
}

}  // namespace

PortGrid ScenarioConfig::bob_grid() const { return grid ? *grid : find_preset(preset).grid; }

void ScenarioConfig::validate() const {
    bob_grid();
    find_preset(eve_preset);
    if (users < 2) {
        throw DomainError("config: users must be at least 2");
    }
    if (!(delta > 0.0 && delta <= 1.0) || !(delta_e > 0.0 && delta_e <= 1.0)) {
        throw DomainError("config: delta must lie in (0, 1]");
    }
    if (!(omega > 0.0)) {
        throw DomainError("config: omega must be positive");
    }
    if (!(gamma_th > 0.0)) {
        throw DomainError("config: gamma_th must be positive");
    }
    if (!(rs >= 0.0)) {
        throw DomainError("config: rs must be nonnegative");
    }
    if (trials < 1000) {
        throw DomainError("config: trials must be at least 1000");
    }
    if (!(quad_tol > 0.0 && quad_tol < 1e-2)) {
        throw DomainError("config: quad_tol must lie in (0, 1e-2)");
    }
    if (sweep) {
        cuma::validate(*sweep);
    }
}

ScenarioConfig parse_config(std::string_view yaml_text) {
    ScenarioConfig c;
    try {
        const YAML::Node root = YAML::Load(std::string(yaml_text));
        if (!root.IsMap()) {
            throw DomainError("config: top level must be a mapping");
        }
        if (!root["schema"]) {
            throw DomainError("config: missing 'schema' field");
        }
        const int schema = root["schema"].as<int>();
        if (schema != kConfigSchema) {
            throw DomainError("config: unsupported schema " + std::to_string(schema));
        }
        reject_unknown(root, {"schema", "preset", "grid", "users", "delta", "omega", "eve", "gamma_th", "rs", "trials",
                              "seed", "quad_tol", "sweep"},
                       "top level");
        read(root, "preset", c.preset);
        if (root["grid"]) {
            c.grid = read_grid(root["grid"]);
        }
        read(root, "users", c.users);
        read(root, "delta", c.delta);
        read(root, "omega", c.omega);
        if (const YAML::Node eve = root["eve"]) {
            reject_unknown(eve, {"preset", "delta"}, "eve");
            read(eve, "preset", c.eve_preset);
            read(eve, "delta", c.delta_e);
        }
        read(root, "gamma_th", c.gamma_th);
        read(root, "rs", c.rs);
        read(root, "trials", c.trials);
        read(root, "seed", c.seed);
        read(root, "quad_tol", c.quad_tol);
        if (root["sweep"]) {
            c.sweep = read_sweep(root["sweep"], c);
        }
    } catch (const YAML::Exception& e) {
        throw DomainError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("config: cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace cuma
