#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crawlerlab/describing.hpp"
#include "crawlerlab/dynamics.hpp"
#include "crawlerlab/params.hpp"
#include "crawlerlab/simulate.hpp"

namespace crawler {

struct SimulateSettings {
    double t_end = 200.0;
    double transient = kDefaultTransient;
    double sample_dt = 0.01;
    IntegratorMethod method = IntegratorMethod::Auto;
    State x0 = State(2.0, 0.0, 0.0, 0.0);
    // When set, x0 is taken relative to x_plus.
    bool relative_to_fixed_point = false;
};

struct HbSettings {
    double M = 0.0;
    std::vector<double> Z_grid;
    bool compare_simulation = false;
};

struct SweepAxis {
    std::string group;
    std::vector<double> values;
};

struct SweepSettings {
    std::vector<SweepAxis> axes;
    bool simulate = false;
    unsigned threads = 0;  // 0 picks the hardware concurrency
};

struct RunConfig {
    Groups groups;
    std::optional<DimensionalParams> dimensional;
    SimulateSettings simulate;
    std::optional<HbSettings> hb;
    std::optional<RelaySpec> relay;
    SweepSettings sweep;
    Tolerance tol;
    std::uint64_t seed = 0;
};

// Throws ConfigError on malformed JSON, unknown keys, missing or invalid values.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Mutable access to a group by name; throws ConfigError for unknown names.
double& group_field(Groups& g, const std::string& name);

}  // namespace crawler
