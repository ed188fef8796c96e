#pragma once
#include <algorithm>
#include <cmath>
#include <string>

#include "crawlerlab/config.hpp"
#include "crawlerlab/params.hpp"

namespace crawler::testing {

inline double rel_err(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline std::string fixture(const std::string& name) { return std::string(CRAWLERLAB_FIXTURES) + "/" + name; }

inline Groups fixture_groups(const std::string& name) { return load_config(fixture(name)).groups; }

// Groups with the friction slope tuned so the composite gain equals gamma.
inline Groups with_gain(double gamma, double pi_l, double pi_s, double pi_V = 0.5, double pi_c = 1.0,
                        double pi_f = 1.0, double zeta = 0.5, double n_f = 0.5) {
    Groups g;
    g.zeta = zeta;
    g.pi_f = pi_f;
    g.pi_V = pi_V;
    g.n_f = n_f;
    g.pi_c = pi_c;
    g.pi_l = pi_l;
    g.pi_s = pi_s;
    g.pi_eps = pi_eps_for_gamma(gamma, pi_f, zeta, n_f);
    return g;
}

inline Groups fig3_groups() {
    Groups g;
    g.zeta = 4.7;
    g.pi_f = 2.5;
    g.pi_V = 0.5;
    g.pi_eps = 4.7e3;
    g.n_f = 1.5;
    g.pi_c = 1e4;
    g.pi_l = 2e4;
    g.pi_s = 2e4;
    return g;
}

// Strong-gain point with anisotropy inside the small-n_f window.
inline Groups strong_gain_groups(double gamma = 150.0, double pi_l = 3600.0, double pi_f = 0.1) {
    return with_gain(gamma, pi_l, 0.7 * pi_l, 0.5, 1e4, pi_f, 0.5, 0.5);
}

}  // namespace crawler::testing
