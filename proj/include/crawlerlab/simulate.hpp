#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "crawlerlab/dynamics.hpp"

namespace crawler {

enum class IntegratorMethod { Auto, Explicit, Implicit };

struct Tolerance {
    double abs = 1e-9;
    double rel = 1e-7;
};

struct IntegratorOptions {
    Tolerance tol;
    IntegratorMethod method = IntegratorMethod::Auto;
    double sample_dt = 0.0;  // 0 records every accepted step
    double initial_dt = 1e-6;
    std::size_t max_steps = 50'000'000;
};

struct IntegratorStats {
    std::size_t steps = 0;
    std::size_t rejections = 0;
    Tolerance tol;
    IntegratorMethod method_used = IntegratorMethod::Explicit;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<AugmentedState> states;
    IntegratorStats stats;

    const AugmentedState& back() const { return states.back(); }
};

struct CycleMetrics {
    double period = 0.0;
    double period_std = 0.0;
    double omega = 0.0;
    double S_amp = 0.0;
    double v_com_bar = 0.0;
    double V_min = 0.0;
    double V_max = 0.0;
    std::size_t events = 0;
    std::size_t cycles = 0;
    bool converged = false;
};

inline constexpr double kDefaultTransient = 20.0;

const char* method_name(IntegratorMethod m);

Trajectory integrate(const State& x0, const Groups& g, double t_end, const IntegratorOptions& opts = {});

// Upward zero crossings of s (with v_s > 0) located by cubic Hermite
// interpolation between samples with t >= times.front() + skip.
std::vector<double> strain_upcrossings(const Trajectory& traj, double skip);
CycleMetrics cycle_metrics(const Trajectory& traj, double skip = kDefaultTransient);

// Relaxes V under the layer problem with (v_com, s, v_s) frozen.
State fast_layer_settle(const State& x0, const Groups& g);

}  // namespace crawler
