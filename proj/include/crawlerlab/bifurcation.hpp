#pragma once

#include <string>
#include <vector>

#include "crawlerlab/equilibria.hpp"

namespace crawler {

struct AssumptionFlags {
    bool positivity = false;     // all groups positive, n_f > 0, zeta >= 0
    bool gain_lower = false;     // gamma > sqrt(5/3)
    bool gain_upper = false;     // gamma < pi_l
    bool strong_gain = false;    // 100 < gamma < pi_l / 6 and 600 < pi_l < 1e4
    bool anisotropy = false;     // 0 < n_f < log(2 + sqrt 3) / 2
    bool gain_in_range() const { return gain_lower && gain_upper; }
    bool supercritical_regime() const { return strong_gain && anisotropy; }
    // Names of failed checks, e.g. "gamma_out_of_range".
    std::vector<std::string> violations() const;
};

struct HopfAnalysis {
    double gamma = 0.0;
    double pi_s_H = 0.0;
    double omega_H = 0.0;
    double real_root = 0.0;  // remaining real root of the cubic, -c2
    double transversality = 0.0;
    double l1 = 0.0;
    AssumptionFlags flags;
};

struct PitchforkAnalysis {
    double pi_s_P = 0.0;
    State w = State::Zero();
    State v = State::Zero();
    double c_parameter = 0.0;  // <w, d_{pi_s} f(x0)>
    double c_transversal = 0.0;
    double c_cubic = 0.0;
    double c_quadratic = 0.0;
    bool subcritical = false;
};

enum class Regime { Resting, Boundary, Crawling };

struct RegimeVerdict {
    Regime by_gain = Regime::Boundary;
    Regime by_spectrum = Regime::Boundary;
    double max_real_part = 0.0;
    bool agree = false;
};

const char* regime_name(Regime r);

inline constexpr double kAnisotropyBound = 0.65847894846240835;  // log(2 + sqrt 3) / 2

AssumptionFlags check_assumptions(const Groups& g);

// Closed-form Hopf gain; throws AssumptionViolation outside the gain range.
double hopf_gain(const Groups& g);
// Same formula without the range check; NaN when the radicand is negative.
double hopf_gain_unchecked(const Groups& g);
// The discarded branch of the quadratic in pi_s * pi_V, divided by pi_V.
double hopf_gain_discarded_root(const Groups& g);
// Upper bound on the Hopf gain from the sign of the cubic coefficient product.
double hopf_gain_upper_bound(const Groups& g);

double hopf_frequency(const Groups& g, double pi_s_H);
double transversality(const Groups& g, double omega_H);
// q_s_scale rescales the right eigenvector before the adjoint is normalised.
double lyapunov_first_coefficient(const Groups& g, double pi_s_H, double omega_H,
                                  std::complex<double> q_s_scale = 1.0);

HopfAnalysis analyze_hopf(const Groups& g, bool strict = false);

double pitchfork_gain(const Groups& g);
std::array<double, 2> pitchfork_remaining_eigenvalues(const Groups& g);
PitchforkAnalysis pitchfork_normal_form(const Groups& g);

RegimeVerdict resting_regime_check(const Groups& g, double pi_s);

}  // namespace crawler
