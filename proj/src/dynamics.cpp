#include "crawlerlab/dynamics.hpp"

#include <cmath>

namespace crawler {

namespace {

// sech^2(z) without overflow.
double sech_squared(double z) {
    const double e = std::exp(-2.0 * std::abs(z));
    const double denom = 1.0 + e;
    return 4.0 * e / (denom * denom);
}

struct FrictionPair {
    double rear;
    double front;
};

FrictionPair friction(const State& x, const Groups& g) {
    return {sigma_pi(rear_speed(x), g.pi_eps, g.n_f), sigma_pi(front_speed(x), g.pi_eps, g.n_f)};
}

}  // namespace

double friction_forward_limit(double n_f) {
    const double t = std::tanh(n_f);
    return (1.0 - t) / (1.0 + t);
}

double sigma_dimensional(double u_dot, double eps_f, double n_f) {
    return sigma_pi(u_dot, 1.0 / eps_f, n_f);
}

double sigma_pi(double u, double pi_eps, double n_f) {
    const double t = std::tanh(n_f);
    return (std::tanh(pi_eps * u + n_f) - t) / (1.0 + t);
}

FrictionDerivatives sigma_pi_derivatives(double u, double pi_eps, double n_f) {
    const double z = pi_eps * u + n_f;
    const double tz = std::tanh(z);
    const double sech2 = sech_squared(z);
    const double scale = 1.0 / (1.0 + std::tanh(n_f));
    FrictionDerivatives d;
    d.value = sigma_pi(u, pi_eps, n_f);
    d.d1 = pi_eps * sech2 * scale;
    d.d2 = -2.0 * pi_eps * d.d1 * tz;
    d.d3 = -2.0 * pi_eps * (d.d2 * tz + pi_eps * d.d1 * sech2);
    return d;
}

State vector_field(const State& x, const Groups& g) {
    const double V = x[kV];
    const auto f = friction(x, g);
    State dx;
    dx[kV] = -g.pi_c * V * V * V + g.pi_l * V - g.pi_s * x[kS];
    dx[kVcom] = -0.5 * g.pi_f * (f.rear + f.front);
    dx[kS] = x[kVs];
    dx[kVs] = g.pi_f * (f.rear - f.front) - x[kS] - 2.0 * g.zeta * x[kVs] + 2.0 * g.pi_V * V;
    return dx;
}

AugmentedState augmented_vector_field(const AugmentedState& y, const Groups& g) {
    AugmentedState dy;
    dy.head<4>() = vector_field(y.head<4>(), g);
    dy[kUcom] = y[kVcom];
    return dy;
}

State symmetry_action(const State& x) { return State(-x[kV], x[kVcom], -x[kS], -x[kVs]); }

State slow_vector_field(const State& x, const Groups& g) {
    State dx = vector_field(x, g);
    const double V = x[kV];
    dx[kV] = (-g.pi_c_eps() * V * V * V + g.pi_l_eps() * V - g.pi_s_eps() * x[kS]) / g.eps;
    return dx;
}

State fast_vector_field(const State& x, const Groups& g) {
    State dx = g.eps * vector_field(x, g);
    const double V = x[kV];
    dx[kV] = -g.pi_c_eps() * V * V * V + g.pi_l_eps() * V - g.pi_s_eps() * x[kS];
    return dx;
}

ReducedState desingularized_vector_field(const ReducedState& y, const Groups& g) {
    const double V = y[0];
    const double v_com = y[1];
    const double v_s = y[2];
    const double pc = g.pi_c_eps();
    const double pl = g.pi_l_eps();
    const double ps = g.pi_s_eps();
    const double rear = sigma_pi(v_com - 0.5 * v_s, g.pi_eps, g.n_f);
    const double front = sigma_pi(v_com + 0.5 * v_s, g.pi_eps, g.n_f);
    const double slope = pl - 3.0 * pc * V * V;
    ReducedState out;
    out[0] = -ps * v_s;
    out[1] = 0.5 * g.pi_f * slope * (rear + front);
    out[2] = -slope * (g.pi_f * (rear - front) + (pc * V * V * V - pl * V) / ps - 2.0 * g.zeta * v_s +
                       2.0 * g.pi_V * V);
    return out;
}

State dimensional_vector_field(const State& x, const DimensionalParams& p) {
    const double V = x[kV];
    const double rear = sigma_dimensional(x[kVcom] - 0.5 * x[kVs], p.eps_f, p.n_f);
    const double front = sigma_dimensional(x[kVcom] + 0.5 * x[kVs], p.eps_f, p.n_f);
    State dx;
    dx[kV] = (-p.kappa * V * V * V + p.rho * V - p.gamma_p * x[kS]) / p.c;
    dx[kVcom] = -0.5 * p.A_sigma * (rear + front) / p.m;
    dx[kS] = x[kVs];
    dx[kVs] = (p.A_sigma * (rear - front) - 2.0 * (p.k * x[kS] + p.b * x[kVs] - p.k_v * V)) / p.m;
    return dx;
}

}  // namespace crawler
