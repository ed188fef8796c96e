#pragma once

namespace crawler {

inline constexpr double kDefaultEps = 1e-4;

// Physical constants in SI units.
struct DimensionalParams {
    double m = 0.0;        // mass of one segment [kg]
    double ell = 0.0;      // natural length [m]
    double k = 0.0;        // elastic constant [kg/s^2]
    double b = 0.0;        // damping [kg/s]
    double A_sigma = 0.0;  // friction scale [N]
    double k_v = 0.0;      // voltage gain [A s/m]
    double c = 0.0;        // capacitance [F]
    double kappa = 0.0;    // cubic current coefficient [A/V^3]
    double rho = 0.0;      // linear current coefficient [A/V]
    double gamma_p = 0.0;  // proprioceptive gain [A/m]
    double eps_f = 0.0;    // friction slope [m/s]
    double n_f = 0.0;      // friction anisotropy [-]
};

struct Scales {
    double l_star = 0.0;
    double m_star = 0.0;
    double t_star = 0.0;
    double omega_n = 0.0;
    double V_star = 0.0;
};

struct Groups {
    double zeta = 0.0;
    double pi_f = 0.0;
    double pi_V = 0.0;
    double pi_eps = 0.0;
    double n_f = 0.0;
    double pi_c = 0.0;
    double pi_l = 0.0;
    double pi_s = 0.0;
    double eps = kDefaultEps;

    double pi_c_eps() const { return eps * pi_c; }
    double pi_l_eps() const { return eps * pi_l; }
    double pi_s_eps() const { return eps * pi_s; }

    Groups with_pi_s(double value) const {
        Groups out = *this;
        out.pi_s = value;
        return out;
    }
};

// Throws InvalidParameter when a field is out of range or not finite.
void validate(const DimensionalParams& p);
void validate(const Groups& g);

Scales characteristic_scales(const DimensionalParams& p);
Groups nondimensionalize(const DimensionalParams& p, const Scales& sc, double eps = kDefaultEps);

// Friction slope group that yields the requested composite gain
// pi_f * sigma'(0) + 2 zeta for the given pi_f, zeta, n_f.
double pi_eps_for_gamma(double gamma, double pi_f, double zeta, double n_f);

}  // namespace crawler
