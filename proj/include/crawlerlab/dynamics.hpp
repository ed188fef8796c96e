#pragma once

#include <Eigen/Core>

#include "crawlerlab/params.hpp"

namespace crawler {

// Dimensionless state ordered (V, v_com, s, v_s).
using State = Eigen::Vector4d;
// State plus the centre-of-mass displacement u_com.
using AugmentedState = Eigen::Matrix<double, 5, 1>;
// Reduced chart (V, v_com, v_s) used on the critical manifold.
using ReducedState = Eigen::Vector3d;

enum StateIndex : int { kV = 0, kVcom = 1, kS = 2, kVs = 3, kUcom = 4 };

struct FrictionDerivatives {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
};

// Limit of the friction fraction for large forward speed.
double friction_forward_limit(double n_f);

double sigma_dimensional(double u_dot, double eps_f, double n_f);
double sigma_pi(double u, double pi_eps, double n_f);
FrictionDerivatives sigma_pi_derivatives(double u, double pi_eps, double n_f);

// Segment speeds: rear u1' = v_com - v_s/2, front u2' = v_com + v_s/2.
inline double rear_speed(const State& x) { return x[kVcom] - 0.5 * x[kVs]; }
inline double front_speed(const State& x) { return x[kVcom] + 0.5 * x[kVs]; }

State vector_field(const State& x, const Groups& g);
AugmentedState augmented_vector_field(const AugmentedState& y, const Groups& g);
State symmetry_action(const State& x);

State slow_vector_field(const State& x, const Groups& g);
// Fast time T = t / eps.
State fast_vector_field(const State& x, const Groups& g);
ReducedState desingularized_vector_field(const ReducedState& y, const Groups& g);

// Dimensional body and circuit dynamics in SI units, same state ordering.
State dimensional_vector_field(const State& x, const DimensionalParams& p);

}  // namespace crawler
