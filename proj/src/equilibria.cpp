#include "crawlerlab/equilibria.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "crawlerlab/errors.hpp"

namespace crawler {

namespace {

template <typename Vec>
Vec d2f_impl(const State& x, const Groups& g, const Vec& u, const Vec& w) {
    using T = typename Vec::Scalar;
    const auto rear = sigma_pi_derivatives(rear_speed(x), g.pi_eps, g.n_f);
    const auto front = sigma_pi_derivatives(front_speed(x), g.pi_eps, g.n_f);
    auto along_rear = [](const Vec& v) -> T { return v[kVcom] - 0.5 * v[kVs]; };
    auto along_front = [](const Vec& v) -> T { return v[kVcom] + 0.5 * v[kVs]; };
    const T r = rear.d2 * along_rear(u) * along_rear(w);
    const T f = front.d2 * along_front(u) * along_front(w);
    Vec out;
    out[kV] = -6.0 * g.pi_c * x[kV] * u[kV] * w[kV];
    out[kVcom] = -0.5 * g.pi_f * (r + f);
    out[kS] = T(0);
    out[kVs] = g.pi_f * (r - f);
    return out;
}

template <typename Vec>
Vec d3f_impl(const State& x, const Groups& g, const Vec& u, const Vec& w, const Vec& z) {
    using T = typename Vec::Scalar;
    const auto rear = sigma_pi_derivatives(rear_speed(x), g.pi_eps, g.n_f);
    const auto front = sigma_pi_derivatives(front_speed(x), g.pi_eps, g.n_f);
    auto along_rear = [](const Vec& v) -> T { return v[kVcom] - 0.5 * v[kVs]; };
    auto along_front = [](const Vec& v) -> T { return v[kVcom] + 0.5 * v[kVs]; };
    const T r = rear.d3 * along_rear(u) * along_rear(w) * along_rear(z);
    const T f = front.d3 * along_front(u) * along_front(w) * along_front(z);
    Vec out;
    out[kV] = -6.0 * g.pi_c * u[kV] * w[kV] * z[kV];
    out[kVcom] = -0.5 * g.pi_f * (r + f);
    out[kS] = T(0);
    out[kVs] = g.pi_f * (r - f);
    return out;
}

}  // namespace

double friction_slope_at_rest(const Groups& g) { return sigma_pi_derivatives(0.0, g.pi_eps, g.n_f).d1; }

double composite_gain(const Groups& g) { return g.pi_f * friction_slope_at_rest(g) + 2.0 * g.zeta; }

FixedPointSet fixed_points(const Groups& g) {
    FixedPointSet out;
    const double radicand = g.pi_l - 2.0 * g.pi_V * g.pi_s;
    if (radicand == 0.0) {
        out.degenerate = true;
        return out;
    }
    if (radicand < 0.0) return out;
    const double amp = std::sqrt(radicand / g.pi_c);
    const State plus(amp, 0.0, 2.0 * g.pi_V * amp, 0.0);
    out.x_plus = plus;
    out.x_minus = symmetry_action(plus);
    out.exists_symmetric = true;
    return out;
}

Jacobian4 jacobian(const State& x, const Groups& g) {
    const double sr = sigma_pi_derivatives(rear_speed(x), g.pi_eps, g.n_f).d1;
    const double sf = sigma_pi_derivatives(front_speed(x), g.pi_eps, g.n_f).d1;
    const double dplus = sf + sr;
    const double dminus = sf - sr;
    const double V = x[kV];
    Jacobian4 J;
    J << g.pi_l - 3.0 * g.pi_c * V * V, 0.0, -g.pi_s, 0.0,
         0.0, -0.5 * g.pi_f * dplus, 0.0, -0.25 * g.pi_f * dminus,
         0.0, 0.0, 0.0, 1.0,
         2.0 * g.pi_V, -g.pi_f * dminus, -1.0, -0.5 * g.pi_f * dplus - 2.0 * g.zeta;
    return J;
}

CharCubic char_cubic_at_symmetric_fp(const Groups& g, double pi_s) {
    const double gamma = composite_gain(g);
    const double m = 3.0 * pi_s * g.pi_V - g.pi_l;
    return {gamma - 2.0 * m, 1.0 - 2.0 * gamma * m, 2.0 * (g.pi_l - 2.0 * pi_s * g.pi_V)};
}

EigenData eigen_data_at_symmetric_fp(const Groups& g) {
    EigenData out;
    out.lambda1 = -g.pi_f * friction_slope_at_rest(g);
    out.cubic = char_cubic_at_symmetric_fp(g, g.pi_s);
    out.roots = solve_monic_cubic(out.cubic.c2, out.cubic.c1, out.cubic.c0);
    return out;
}

CVector4 d2f(const State& x, const Groups& g, const CVector4& v1, const CVector4& v2) {
    return d2f_impl(x, g, v1, v2);
}

CVector4 d3f(const State& x, const Groups& g, const CVector4& v1, const CVector4& v2, const CVector4& v3) {
    return d3f_impl(x, g, v1, v2, v3);
}

State d2f(const State& x, const Groups& g, const State& v1, const State& v2) { return d2f_impl(x, g, v1, v2); }

State d3f(const State& x, const Groups& g, const State& v1, const State& v2, const State& v3) {
    return d3f_impl(x, g, v1, v2, v3);
}

namespace {

// Null vector of A with component `fixed` set to one: solves the 5x4 system
// [A; e_fixed^T] v = [0; 1].
CVector4 bordered_null_vector(const Eigen::Matrix4cd& A, int fixed) {
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(A);
    const auto& sv = svd.singularValues();
    const double scale = std::max(sv[0], 1.0);
    if (sv[2] <= 1e-12 * scale) throw Degenerate("eigenvalue is not simple");
    if (sv[3] > 1e-6 * scale) throw Degenerate("matrix is not singular at the requested eigenvalue");

    Eigen::Matrix<std::complex<double>, 5, 4> B;
    B.topRows<4>() = A;
    B.row(4).setZero();
    B(4, fixed) = 1.0;
    Eigen::Matrix<std::complex<double>, 5, 1> rhs = Eigen::Matrix<std::complex<double>, 5, 1>::Zero();
    rhs[4] = 1.0;
    Eigen::ColPivHouseholderQR<Eigen::Matrix<std::complex<double>, 5, 4>> qr(B);
    if (qr.rank() < 4) throw Degenerate("bordered eigenvector system is singular");
    return qr.solve(rhs);
}

}  // namespace

HopfEigenPair eigen_pair_hopf(const Groups& g, double pi_s_H, double omega_H, std::complex<double> q_s_scale) {
    const Groups gh = g.with_pi_s(pi_s_H);
    const auto fps = fixed_points(gh);
    if (!fps.exists_symmetric) throw Degenerate("symmetric fixed points do not exist at the Hopf gain");
    const Eigen::Matrix4cd J = jacobian(*fps.x_plus, gh).cast<std::complex<double>>();
    const std::complex<double> iw(0.0, omega_H);
    const Eigen::Matrix4cd I = Eigen::Matrix4cd::Identity();

    HopfEigenPair out;
    out.q = bordered_null_vector(J - iw * I, kS) * q_s_scale;
    CVector4 p = bordered_null_vector(J.transpose() + iw * I, kVs);
    const std::complex<double> pq = inner(p, out.q);
    if (std::abs(pq) < 1e-14) throw Degenerate("left and right eigenvectors are orthogonal");
    out.p = p / std::conj(pq);
    return out;
}

}  // namespace crawler
