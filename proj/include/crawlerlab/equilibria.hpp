#pragma once

#include <array>
#include <complex>
#include <optional>

#include <Eigen/Core>

#include "crawlerlab/cubic.hpp"
#include "crawlerlab/dynamics.hpp"

namespace crawler {

using Jacobian4 = Eigen::Matrix4d;
using CVector4 = Eigen::Vector4cd;

struct FixedPointSet {
    State x0 = State::Zero();
    std::optional<State> x_plus;
    std::optional<State> x_minus;
    bool exists_symmetric = false;
    bool degenerate = false;  // radicand exactly zero
};

struct CharCubic {
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;
};

struct EigenData {
    double lambda1 = 0.0;
    CharCubic cubic;
    CubicRoots roots;
    std::optional<CVector4> eigvec_q;
    std::optional<CVector4> eigvec_p;
};

struct HopfEigenPair {
    CVector4 q;
    CVector4 p;
};

// Composite gain pi_f sigma'(0) + 2 zeta.
double composite_gain(const Groups& g);
double friction_slope_at_rest(const Groups& g);

FixedPointSet fixed_points(const Groups& g);
Jacobian4 jacobian(const State& x, const Groups& g);

CharCubic char_cubic_at_symmetric_fp(const Groups& g, double pi_s);
EigenData eigen_data_at_symmetric_fp(const Groups& g);

// Second and third directional derivatives of the vector field.
CVector4 d2f(const State& x, const Groups& g, const CVector4& v1, const CVector4& v2);
CVector4 d3f(const State& x, const Groups& g, const CVector4& v1, const CVector4& v2, const CVector4& v3);
State d2f(const State& x, const Groups& g, const State& v1, const State& v2);
State d3f(const State& x, const Groups& g, const State& v1, const State& v2, const State& v3);

// Right eigenvector q (J q = i w q, q_s = q_s_scale) and adjoint p
// (J^T p = -i w p, <p, q> = 1) at x_plus with gain pi_s_H.
HopfEigenPair eigen_pair_hopf(const Groups& g, double pi_s_H, double omega_H,
                              std::complex<double> q_s_scale = 1.0);

// Conjugate-linear in the first argument.
inline std::complex<double> inner(const CVector4& a, const CVector4& b) { return a.dot(b); }

}  // namespace crawler
