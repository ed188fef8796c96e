#pragma once

#include <complex>
#include <vector>

#include "crawlerlab/describing.hpp"
#include "crawlerlab/equilibria.hpp"

// Independent numerical cross-checks for the closed forms.
namespace crawler::oracle {

// Dense eigenvalues of a 4x4 real matrix.
std::vector<std::complex<double>> eigenvalues(const Jacobian4& J);
// Roots of x^3 + c2 x^2 + c1 x + c0 from the companion matrix.
std::vector<std::complex<double>> cubic_roots_companion(double c2, double c1, double c0);

// Largest real part among the Jacobian eigenvalues at x_plus for gain pi_s.
double max_real_part_at_symmetric_fp(const Groups& g, double pi_s);
// Bisection on the sign of the largest real part over (1e-6, pi_s_P - 1e-6).
double hopf_gain_bisection(const Groups& g, double tol = 1e-12);
// Central difference of Re(lambda) of the crossing pair with respect to pi_s * pi_V.
double transversality_fd(const Groups& g, double pi_s_H);

Jacobian4 jacobian_fd(const State& x, const Groups& g);
State d2f_fd(const State& x, const Groups& g, const State& v1, const State& v2);
State d3f_fd(const State& x, const Groups& g, const State& v1, const State& v2, const State& v3);
double sigma_derivative_fd(double u, const Groups& g, int order);

// Fourier coefficients of the relay outputs over one period. Switching instants
// are located by bisection on the sampled input and each constant piece is
// integrated by Gauss-Legendre quadrature.
VoltageHarmonics relay_voltage_fourier(double S, const RelaySpec& r, int samples = 4096);
FrictionHarmonics friction_relay_fourier(double a, double Delta, double phi, int samples = 4096);

// Newton iteration on g_residual from a heuristic start, for cross-checking g_root.
double g_root_newton(double Z, const AlphaEta& ae, double zeta);

}  // namespace crawler::oracle
