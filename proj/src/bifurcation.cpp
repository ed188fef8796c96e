#include "crawlerlab/bifurcation.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "crawlerlab/errors.hpp"

namespace crawler {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Resting: return "resting";
        case Regime::Crawling: return "crawling";
        case Regime::Boundary: return "boundary";
    }
    return "boundary";
}

std::vector<std::string> AssumptionFlags::violations() const {
    std::vector<std::string> out;
    if (!positivity) out.emplace_back("nonpositive_group");
    if (!gain_in_range()) out.emplace_back("gamma_out_of_range");
    if (!strong_gain) out.emplace_back("outside_supercritical_gain_window");
    if (!anisotropy) out.emplace_back("anisotropy_out_of_range");
    return out;
}

AssumptionFlags check_assumptions(const Groups& g) {
    AssumptionFlags f;
    const double gamma = composite_gain(g);
    f.positivity = g.pi_s > 0 && g.pi_V > 0 && g.pi_eps > 0 && g.pi_c > 0 && g.pi_f > 0 && g.pi_l > 0 &&
                   g.n_f > 0 && g.zeta >= 0;
    f.gain_lower = gamma > std::sqrt(5.0 / 3.0);
    f.gain_upper = gamma < g.pi_l;
    f.strong_gain = gamma > 100.0 && gamma < g.pi_l / 6.0 && g.pi_l > 600.0 && g.pi_l < 1e4;
    f.anisotropy = g.n_f > 0.0 && g.n_f < kAnisotropyBound;
    return f;
}

namespace {

struct HopfQuadratic {
    double centre;
    double half_root;
};

HopfQuadratic hopf_quadratic(const Groups& g) {
    const double gamma = composite_gain(g);
    const double centre = gamma / 12.0 + 1.0 / (36.0 * gamma) + g.pi_l / 3.0;
    const double radicand = 1.0 / (324.0 * gamma * gamma) + gamma * gamma / 36.0 + 2.0 * g.pi_l / (27.0 * gamma) -
                            5.0 / 54.0;
    return {centre, radicand >= 0.0 ? 0.5 * std::sqrt(radicand) : std::numeric_limits<double>::quiet_NaN()};
}

}  // namespace

double hopf_gain_unchecked(const Groups& g) {
    const auto h = hopf_quadratic(g);
    return (h.centre - h.half_root) / g.pi_V;
}

double hopf_gain_discarded_root(const Groups& g) {
    const auto h = hopf_quadratic(g);
    return (h.centre + h.half_root) / g.pi_V;
}

double hopf_gain_upper_bound(const Groups& g) {
    return (1.0 / (2.0 * composite_gain(g)) + g.pi_l) / (3.0 * g.pi_V);
}

double hopf_gain(const Groups& g) {
    const auto f = check_assumptions(g);
    if (!f.gain_lower) throw AssumptionViolation("gamma_lower", "composite gain must exceed sqrt(5/3)");
    if (!f.gain_upper) throw AssumptionViolation("gamma_upper", "composite gain must be below pi_l");
    return hopf_gain_unchecked(g);
}

double hopf_frequency(const Groups& g, double pi_s_H) {
    const double c1 = char_cubic_at_symmetric_fp(g, pi_s_H).c1;
    if (!(c1 > 0.0)) throw AssumptionViolation("frequency", "cubic coefficient c1 must be positive at the Hopf gain");
    return std::sqrt(c1);
}

double transversality(const Groups& g, double omega_H) {
    const double gamma = composite_gain(g);
    const double w2 = omega_H * omega_H;
    const double shift = gamma - (1.0 - w2) / gamma;
    return (6.0 * w2 + 3.0 * gamma * gamma - 5.0) / (w2 + shift * shift);
}

double lyapunov_first_coefficient(const Groups& g, double pi_s_H, double omega_H, std::complex<double> q_s_scale) {
    const Groups gh = g.with_pi_s(pi_s_H);
    const auto fps = fixed_points(gh);
    if (!fps.exists_symmetric) throw Degenerate("symmetric fixed points do not exist at the Hopf gain");
    const State& x = *fps.x_plus;
    const auto pair = eigen_pair_hopf(g, pi_s_H, omega_H, q_s_scale);
    const CVector4& q = pair.q;
    const CVector4& p = pair.p;
    const CVector4 qbar = q.conjugate();

    const Eigen::Matrix4cd J = jacobian(x, gh).cast<std::complex<double>>();
    const Eigen::Matrix4cd shifted = std::complex<double>(0.0, 2.0 * omega_H) * Eigen::Matrix4cd::Identity() - J;
    Eigen::PartialPivLU<Eigen::Matrix4cd> lu_j(J);
    Eigen::PartialPivLU<Eigen::Matrix4cd> lu_s(shifted);
    if (lu_j.rcond() < 1e-12) throw Degenerate("Jacobian is singular at the Hopf point");
    if (lu_s.rcond() < 1e-12) throw Degenerate("2iw - J is singular at the Hopf point");

    const CVector4 a = lu_j.solve(d2f(x, gh, q, qbar));
    const CVector4 b = lu_s.solve(d2f(x, gh, q, q));
    const std::complex<double> sum =
        inner(p, d3f(x, gh, q, q, qbar)) - 2.0 * inner(p, d2f(x, gh, q, a)) + inner(p, d2f(x, gh, qbar, b));
    return sum.real() / (2.0 * omega_H);
}

HopfAnalysis analyze_hopf(const Groups& g, bool strict) {
    HopfAnalysis out;
    out.flags = check_assumptions(g);
    out.gamma = composite_gain(g);
    if (strict && !out.flags.gain_in_range()) {
        throw AssumptionViolation("gamma_out_of_range", "composite gain outside (sqrt(5/3), pi_l)");
    }
    if (strict && !out.flags.positivity) throw AssumptionViolation("positivity", "groups must be positive");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.pi_s_H = hopf_gain_unchecked(g);
    out.omega_H = nan;
    out.real_root = nan;
    out.transversality = nan;
    out.l1 = nan;
    if (!std::isfinite(out.pi_s_H) || !out.flags.gain_in_range()) return out;
    out.omega_H = hopf_frequency(g, out.pi_s_H);
    out.real_root = -char_cubic_at_symmetric_fp(g, out.pi_s_H).c2;
    out.transversality = transversality(g, out.omega_H);
    out.l1 = lyapunov_first_coefficient(g, out.pi_s_H, out.omega_H);
    return out;
}

double pitchfork_gain(const Groups& g) {
    const double gamma = composite_gain(g);
    if (std::abs(g.pi_l - gamma) <= 1e-12 * std::abs(g.pi_l)) {
        throw AssumptionViolation("pi_l_equals_gamma", "pitchfork requires pi_l != gamma");
    }
    return g.pi_l / (2.0 * g.pi_V);
}

std::array<double, 2> pitchfork_remaining_eigenvalues(const Groups& g) {
    const double gamma = composite_gain(g);
    const double root = std::sqrt((gamma + g.pi_l) * (gamma + g.pi_l) - 4.0);
    return {0.5 * (g.pi_l - gamma + root), 0.5 * (g.pi_l - gamma - root)};
}

PitchforkAnalysis pitchfork_normal_form(const Groups& g) {
    PitchforkAnalysis out;
    out.pi_s_P = pitchfork_gain(g);
    const Groups gp = g.with_pi_s(out.pi_s_P);
    const double gamma = composite_gain(g);
    out.v = State(1.0, 0.0, 2.0 * g.pi_V, 0.0);
    out.w = State(-2.0 * g.pi_V, 0.0, gamma * g.pi_l, g.pi_l);

    const State origin = State::Zero();
    const Jacobian4 J = jacobian(origin, gp);
    const double scale = J.cwiseAbs().maxCoeff();
    const double right = (J * out.v).norm() / (scale * out.v.norm());
    const double left = (J.transpose() * out.w).norm() / (scale * out.w.norm());
    if (right > 1e-9 || left > 1e-9) throw Degenerate("pitchfork null vectors do not annihilate the Jacobian");

    // d_{pi_s} f = (-s, 0, 0, 0); it vanishes at the origin and is linear in x.
    out.c_parameter = 0.0;
    const State dparam_v(-out.v[kS], 0.0, 0.0, 0.0);
    out.c_transversal = out.w.dot(dparam_v);
    out.c_quadratic = out.w.dot(d2f(origin, gp, out.v, out.v));
    out.c_cubic = out.w.dot(d3f(origin, gp, out.v, out.v, out.v));
    out.subcritical = out.c_transversal > 0.0 && out.c_cubic > 0.0;
    return out;
}

RegimeVerdict resting_regime_check(const Groups& g, double pi_s) {
    RegimeVerdict out;
    const double pi_s_H = hopf_gain(g);
    const Groups gs = g.with_pi_s(pi_s);
    const auto fps = fixed_points(gs);
    if (!fps.exists_symmetric) throw Degenerate("symmetric fixed points do not exist");

    const double lambda1 = -g.pi_f * friction_slope_at_rest(g);
    const auto cubic = char_cubic_at_symmetric_fp(g, pi_s);
    const auto roots = solve_monic_cubic(cubic.c2, cubic.c1, cubic.c0);
    double max_re = lambda1;
    for (const auto& r : roots.roots) max_re = std::max(max_re, r.real());
    out.max_real_part = max_re;

    const double tol = 1e-12 * std::max(1.0, pi_s_H);
    if (pi_s > 0.0 && pi_s < pi_s_H - tol) out.by_gain = Regime::Resting;
    else if (pi_s > pi_s_H + tol) out.by_gain = Regime::Crawling;
    else out.by_gain = Regime::Boundary;

    const double spectral_tol = 1e-9 * std::max(1.0, std::abs(cubic.c2));
    if (max_re < -spectral_tol) out.by_spectrum = Regime::Resting;
    else if (max_re > spectral_tol) out.by_spectrum = Regime::Crawling;
    else out.by_spectrum = Regime::Boundary;
    out.agree = out.by_gain == out.by_spectrum;
    return out;
}

}  // namespace crawler
