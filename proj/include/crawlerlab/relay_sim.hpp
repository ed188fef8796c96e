#pragma once

#include <cstddef>

#include "crawlerlab/describing.hpp"

namespace crawler {

struct RelaySimOptions {
    double t_end = 300.0;
    double transient = 100.0;
    double sample_dt = 1e-3;
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
};

struct RelaySimResult {
    bool switching = false;
    std::size_t switches = 0;
    std::size_t stick_events = 0;
    double period = 0.0;
    double omega = 0.0;
    double S_amp = 0.0;
    double v_com_bar = 0.0;
};

struct HBComparison {
    HBSolution hb;
    RelaySimResult sim;
    double dev_omega = 0.0;
    double dev_S = 0.0;
    double dev_v_com_bar = 0.0;
};

// Closed loop with the voltage replaced by a hysteretic relay (switching to -M
// when s rises through beta and to +M when s falls through -beta) and the
// friction replaced by its discontinuous limit, including segment sticking.
RelaySimResult simulate_relay_loop(const Groups& g, const RelaySpec& r, const RelaySimOptions& opts = {});

HBComparison hb_vs_simulation(const Groups& g, const RelaySpec& r, const RelaySimOptions& opts = {});

}  // namespace crawler
