#pragma once

#include "crawlerlab/params.hpp"

namespace crawler {

struct RelaySpec {
    double M = 0.0;
    double beta = 0.0;
};

struct FrictionRelay {
    double Delta = 0.0;
    double a = 0.0;
};

struct AlphaEta {
    double alpha = 0.0;
    double eta = 0.0;
};

struct VoltageHarmonics {
    double V0 = 0.0;
    double V_sin = 0.0;
    double V_cos = 0.0;
};

// sigma0 is the cosine-series constant term, so the mean output is sigma0 / 2.
struct FrictionHarmonics {
    double sigma0 = 0.0;
    double sigma_sin = 0.0;
    double sigma_cos = 0.0;
};

struct HBSolution {
    double omega = 0.0;
    double S = 0.0;
    double Z = 0.0;
    double v_tilde = 0.0;
    double v_bar = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
    double v_com_bar = 0.0;
    double P_bar = 0.0;
    double phi_rel = 0.0;  // phase of V relative to s'
    bool feasible = false;
};

struct BalanceResiduals {
    double speed = 0.0;
    double dissipation = 0.0;
    double stiffness = 0.0;
};

struct Optimum {
    double Z_star = 1.0;
    double S_star = 0.0;
    double beta_star = 0.0;
    double omega_star = 1.0;
    double v_com_bar_star = 0.0;
    double P_bar_star = 0.0;
};

struct PowerSample {
    double instantaneous = 0.0;
    double average = 0.0;
};

FrictionRelay friction_relay(double n_f);
AlphaEta alpha_eta(const Groups& g, double M);

VoltageHarmonics relay_voltage_fundamental(double S, const RelaySpec& r);
FrictionHarmonics friction_relay_fundamental(double a, double Delta, double phi);

double g_residual(double S, double Z, const AlphaEta& ae, double zeta);
// Unique positive root in S of g_residual for fixed Z (bisection then Newton).
double g_root(double Z, const AlphaEta& ae, double zeta);

// Balance with the relay threshold fixed; solves for S > beta.
HBSolution solve_balance(const RelaySpec& r, const Groups& g);
// Balance parameterised by Z = beta / S.
HBSolution solve_balance_ratio(double Z, double M, const Groups& g);
BalanceResiduals balance_residuals(const HBSolution& hb, const RelaySpec& r, const Groups& g);

Optimum optimize(const Groups& g, double M);

PowerSample power(double t, const HBSolution& hb, const RelaySpec& r);
double average_power(double Z, double M, const AlphaEta& ae, double zeta);

// Relay parameters suggested by the critical manifold: branch voltage and fold strain.
RelaySpec relay_from_manifold(const Groups& g);

}  // namespace crawler
