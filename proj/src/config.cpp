#include "crawlerlab/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "crawlerlab/errors.hpp"

namespace crawler {

namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

double number(const json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key)) throw ConfigError("missing '" + std::string(key) + "' in " + where);
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be a number");
    return v.get<double>();
}

double number_or(const json& obj, const std::string& where, const char* key, double fallback) {
    return obj.contains(key) ? number(obj, where, key) : fallback;
}

bool boolean_or(const json& obj, const std::string& where, const char* key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_boolean()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be a boolean");
    return obj.at(key).get<bool>();
}

std::vector<double> number_list(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError(where + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(where + " must contain only numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

// Either an explicit list or {"start", "stop", "count"}.
std::vector<double> grid(const json& v, const std::string& where) {
    if (v.is_array()) return number_list(v, where);
    only_keys(v, where, {"start", "stop", "count"});
    const double start = number(v, where, "start");
    const double stop = number(v, where, "stop");
    const double count = number(v, where, "count");
    if (count < 0 || count != static_cast<double>(static_cast<long>(count))) {
        throw ConfigError("'count' in " + where + " must be a non-negative integer");
    }
    const auto n = static_cast<std::size_t>(count);
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(n == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return out;
}

Groups parse_groups(const json& j) {
    const std::string where = "groups";
    only_keys(j, where, {"zeta", "pi_f", "pi_V", "pi_eps", "n_f", "pi_c", "pi_l", "pi_s", "eps"});
    Groups g;
    g.zeta = number(j, where, "zeta");
    g.pi_f = number(j, where, "pi_f");
    g.pi_V = number(j, where, "pi_V");
    g.pi_eps = number(j, where, "pi_eps");
    g.n_f = number(j, where, "n_f");
    g.pi_c = number(j, where, "pi_c");
    g.pi_l = number(j, where, "pi_l");
    g.pi_s = number(j, where, "pi_s");
    g.eps = number_or(j, where, "eps", kDefaultEps);
    return g;
}

DimensionalParams parse_dimensional(const json& j) {
    const std::string where = "dimensional";
    only_keys(j, where, {"m", "ell", "k", "b", "A_sigma", "k_v", "c", "kappa", "rho", "gamma_p", "eps_f", "n_f", "eps"});
    DimensionalParams p;
    p.m = number(j, where, "m");
    p.ell = number(j, where, "ell");
    p.k = number(j, where, "k");
    p.b = number(j, where, "b");
    p.A_sigma = number(j, where, "A_sigma");
    p.k_v = number(j, where, "k_v");
    p.c = number(j, where, "c");
    p.kappa = number(j, where, "kappa");
    p.rho = number(j, where, "rho");
    p.gamma_p = number(j, where, "gamma_p");
    p.eps_f = number(j, where, "eps_f");
    p.n_f = number(j, where, "n_f");
    return p;
}

IntegratorMethod parse_method(const json& v) {
    if (!v.is_string()) throw ConfigError("simulate.method must be a string");
    const auto s = v.get<std::string>();
    if (s == "auto") return IntegratorMethod::Auto;
    if (s == "explicit") return IntegratorMethod::Explicit;
    if (s == "implicit") return IntegratorMethod::Implicit;
    throw ConfigError("simulate.method must be one of auto, explicit, implicit");
}

State parse_state(const json& v, const std::string& where) {
    const auto xs = number_list(v, where);
    if (xs.size() != 4) throw ConfigError(where + " must have 4 entries (V, v_com, s, v_s)");
    return State(xs[0], xs[1], xs[2], xs[3]);
}

SimulateSettings parse_simulate(const json& j) {
    const std::string where = "simulate";
    only_keys(j, where, {"t_end", "transient", "sample_dt", "method", "x0", "x0_offset_from_fixed_point"});
    SimulateSettings s;
    s.t_end = number_or(j, where, "t_end", s.t_end);
    s.transient = number_or(j, where, "transient", s.transient);
    s.sample_dt = number_or(j, where, "sample_dt", s.sample_dt);
    if (j.contains("method")) s.method = parse_method(j.at("method"));
    if (j.contains("x0") && j.contains("x0_offset_from_fixed_point")) {
        throw ConfigError("simulate accepts only one of x0 and x0_offset_from_fixed_point");
    }
    if (j.contains("x0")) s.x0 = parse_state(j.at("x0"), "simulate.x0");
    if (j.contains("x0_offset_from_fixed_point")) {
        s.x0 = parse_state(j.at("x0_offset_from_fixed_point"), "simulate.x0_offset_from_fixed_point");
        s.relative_to_fixed_point = true;
    }
    if (!(s.t_end > 0.0)) throw ConfigError("simulate.t_end must be > 0");
    if (!(s.transient >= 0.0)) throw ConfigError("simulate.transient must be >= 0");
    if (!(s.sample_dt >= 0.0)) throw ConfigError("simulate.sample_dt must be >= 0");
    return s;
}

HbSettings parse_hb(const json& j) {
    const std::string where = "hb";
    only_keys(j, where, {"M", "Z_grid", "compare_simulation"});
    HbSettings h;
    h.M = number(j, where, "M");
    if (!(h.M > 0.0)) throw ConfigError("hb.M must be > 0");
    if (j.contains("Z_grid")) {
        h.Z_grid = grid(j.at("Z_grid"), "hb.Z_grid");
    } else {
        for (int i = 1; i <= 20; ++i) h.Z_grid.push_back(0.05 * i);
    }
    for (double z : h.Z_grid) {
        if (!(z > 0.0 && z <= 1.0)) throw ConfigError("hb.Z_grid values must lie in (0, 1]");
    }
    h.compare_simulation = boolean_or(j, where, "compare_simulation", false);
    return h;
}

SweepSettings parse_sweep(const json& j) {
    const std::string where = "sweep";
    only_keys(j, where, {"axes", "simulate", "threads"});
    SweepSettings s;
    if (!j.contains("axes") || !j.at("axes").is_array()) throw ConfigError("sweep.axes must be an array");
    for (const auto& a : j.at("axes")) {
        only_keys(a, "sweep.axes[]", {"group", "values", "range"});
        if (!a.contains("group") || !a.at("group").is_string()) throw ConfigError("sweep axis needs a 'group' name");
        SweepAxis axis;
        axis.group = a.at("group").get<std::string>();
        Groups probe;
        (void)group_field(probe, axis.group);
        if (a.contains("values") == a.contains("range")) {
            throw ConfigError("sweep axis needs exactly one of 'values' and 'range'");
        }
        axis.values = a.contains("values") ? number_list(a.at("values"), "sweep.axes[].values")
                                           : grid(a.at("range"), "sweep.axes[].range");
        s.axes.push_back(std::move(axis));
    }
    s.simulate = boolean_or(j, where, "simulate", false);
    const double threads = number_or(j, where, "threads", 0.0);
    if (threads < 0) throw ConfigError("sweep.threads must be >= 0");
    s.threads = static_cast<unsigned>(threads);
    return s;
}

}  // namespace

double& group_field(Groups& g, const std::string& name) {
    if (name == "zeta") return g.zeta;
    if (name == "pi_f") return g.pi_f;
    if (name == "pi_V") return g.pi_V;
    if (name == "pi_eps") return g.pi_eps;
    if (name == "n_f") return g.n_f;
    if (name == "pi_c") return g.pi_c;
    if (name == "pi_l") return g.pi_l;
    if (name == "pi_s") return g.pi_s;
    if (name == "eps") return g.eps;
    throw ConfigError("unknown group '" + name + "'");
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    only_keys(j, "config", {"groups", "dimensional", "simulate", "hb", "relay", "sweep", "tolerance", "seed"});
    RunConfig cfg;
    if (j.contains("groups") == j.contains("dimensional")) {
        throw ConfigError("config needs exactly one of 'groups' and 'dimensional'");
    }
    try {
        if (j.contains("groups")) {
            cfg.groups = parse_groups(j.at("groups"));
        } else {
            const auto& d = j.at("dimensional");
            cfg.dimensional = parse_dimensional(d);
            const double eps = number_or(d, "dimensional", "eps", kDefaultEps);
            cfg.groups = nondimensionalize(*cfg.dimensional, characteristic_scales(*cfg.dimensional), eps);
        }
        validate(cfg.groups);
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("invalid parameters: ") + e.what());
    }
    if (j.contains("simulate")) cfg.simulate = parse_simulate(j.at("simulate"));
    if (j.contains("hb")) cfg.hb = parse_hb(j.at("hb"));
    if (j.contains("relay")) {
        only_keys(j.at("relay"), "relay", {"M", "beta"});
        cfg.relay = RelaySpec{number(j.at("relay"), "relay", "M"), number(j.at("relay"), "relay", "beta")};
        if (!(cfg.relay->M > 0.0 && cfg.relay->beta > 0.0)) throw ConfigError("relay M and beta must be > 0");
    }
    if (j.contains("sweep")) cfg.sweep = parse_sweep(j.at("sweep"));
    if (j.contains("tolerance")) {
        only_keys(j.at("tolerance"), "tolerance", {"abs", "rel"});
        cfg.tol.abs = number_or(j.at("tolerance"), "tolerance", "abs", cfg.tol.abs);
        cfg.tol.rel = number_or(j.at("tolerance"), "tolerance", "rel", cfg.tol.rel);
    }
    if (!(cfg.tol.abs > 0.0 && cfg.tol.rel > 0.0)) throw ConfigError("tolerances must be > 0");
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace crawler
