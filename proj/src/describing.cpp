#include "crawlerlab/describing.hpp"

#include <cmath>
#include <numbers>

#include "crawlerlab/dynamics.hpp"
#include "crawlerlab/errors.hpp"
#include "crawlerlab/gsp.hpp"

namespace crawler {

namespace {

constexpr double kPi = std::numbers::pi;

double transition_angle(double Delta) { return kPi * Delta / (1.0 + Delta); }

void require_feasible(const AlphaEta& ae) {
    if (!(ae.alpha > ae.eta)) {
        throw Infeasible("relay drive too weak for friction: alpha <= eta (Assumption 4)");
    }
}

HBSolution assemble(double omega, double S, const Groups& g) {
    const auto fr = friction_relay(g.n_f);
    HBSolution hb;
    hb.omega = omega;
    hb.S = S;
    hb.v_tilde = 0.5 * omega * S;
    hb.v_bar = fr.a * hb.v_tilde;
    hb.phi1 = kPi;
    hb.phi2 = 0.0;
    hb.v_com_bar = hb.v_bar;
    hb.feasible = omega > 0.0;
    return hb;
}

}  // namespace

FrictionRelay friction_relay(double n_f) {
    FrictionRelay fr;
    fr.Delta = friction_forward_limit(n_f);
    fr.a = std::cos(transition_angle(fr.Delta));
    return fr;
}

AlphaEta alpha_eta(const Groups& g, double M) {
    const double Delta = friction_forward_limit(g.n_f);
    return {8.0 * g.pi_V * M / kPi, 4.0 * g.pi_f / kPi * (1.0 + Delta) * std::sin(transition_angle(Delta))};
}

VoltageHarmonics relay_voltage_fundamental(double S, const RelaySpec& r) {
    if (S < r.beta) throw NoSwitching("strain amplitude below relay threshold; relay never switches");
    const double Z = r.beta / S;
    return {0.0, -4.0 / kPi * r.M * std::sqrt(1.0 - Z * Z), 4.0 / kPi * r.M * Z};
}

FrictionHarmonics friction_relay_fundamental(double a, double Delta, double phi) {
    if (std::abs(a) >= 1.0) throw SaturatedInput("speed ratio |a| >= 1; segment speed never reverses");
    const double width = 2.0 / kPi * (1.0 + Delta) * std::sqrt(1.0 - a * a);
    return {2.0 / kPi * (kPi * Delta - std::acos(a) * (1.0 + Delta)), -width * std::sin(phi), width * std::cos(phi)};
}

double g_residual(double S, double Z, const AlphaEta& ae, double zeta) {
    const double drive = ae.alpha * Z - ae.eta;
    return ae.alpha * std::sqrt(1.0 - Z * Z) + S * (1.0 - drive * drive / (4.0 * zeta * zeta * S * S));
}

double g_root(double Z, const AlphaEta& ae, double zeta) {
    if (!(Z > 0.0 && Z <= 1.0)) throw InvalidParameter("Z must lie in (0, 1]");
    if (!(zeta > 0.0)) throw InvalidParameter("zeta must be > 0 for the balance");
    // g(S) * S = S^2 + alpha sqrt(1-Z^2) S - c^2 with c = |alpha Z - eta| / (2 zeta);
    // the positive root is bounded above by c + alpha.
    const double c = std::abs(ae.alpha * Z - ae.eta) / (2.0 * zeta);
    if (c == 0.0) throw Infeasible("alpha Z == eta: strain amplitude collapses to zero");
    double lo = 0.0;
    double hi = c + ae.alpha + 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g_residual(mid, Z, ae, zeta) < 0.0 ? lo : hi) = mid;
    }
    double S = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
        const double drive = ae.alpha * Z - ae.eta;
        const double dg = 1.0 + drive * drive / (4.0 * zeta * zeta * S * S);
        const double next = S - g_residual(S, Z, ae, zeta) / dg;
        if (!(std::abs(g_residual(next, Z, ae, zeta)) < std::abs(g_residual(S, Z, ae, zeta)))) break;
        S = next;
    }
    return S;
}

HBSolution solve_balance_ratio(double Z, double M, const Groups& g) {
    const auto ae = alpha_eta(g, M);
    const double S = g_root(Z, ae, g.zeta);
    const double omega = (ae.alpha * Z - ae.eta) / (2.0 * g.zeta * S);
    HBSolution hb = assemble(omega, S, g);
    hb.Z = Z;
    hb.P_bar = average_power(Z, M, ae, g.zeta);
    hb.phi_rel = std::acos(Z);
    return hb;
}

HBSolution solve_balance(const RelaySpec& r, const Groups& g) {
    if (!(r.M > 0.0 && r.beta > 0.0)) throw InvalidParameter("relay M and beta must be > 0");
    if (!(g.zeta > 0.0)) throw InvalidParameter("zeta must be > 0 for the balance");
    const auto ae = alpha_eta(g, r.M);
    require_feasible(ae);
    auto omega_of = [&](double S) { return (ae.alpha * r.beta / S - ae.eta) / (2.0 * g.zeta * S); };
    auto h = [&](double S) {
        const double Z = r.beta / S;
        const double w = omega_of(S);
        return ae.alpha * std::sqrt(std::max(0.0, 1.0 - Z * Z)) + S * (1.0 - w * w);
    };

    // omega(S) > 0 requires S < alpha beta / eta; h is positive at that end.
    double lo = r.beta;
    double hi = ae.eta > 0.0 ? std::min(r.beta * 1e6, ae.alpha * r.beta / ae.eta) : r.beta * 1e6;
    const double h_lo = h(lo);
    double S;
    if (std::abs(h_lo) <= 1e-12 * std::max(1.0, r.beta)) {
        S = lo;
    } else {
        if (h_lo > 0.0) throw Infeasible("no balance with strain amplitude above the relay threshold");
        if (!(h(hi) > 0.0)) throw Infeasible("balance root not bracketed");
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (h(mid) < 0.0 ? lo : hi) = mid;
        }
        S = 0.5 * (lo + hi);
    }
    const double omega = omega_of(S);
    if (!(omega > 0.0)) throw Infeasible("balance yields non-positive frequency");
    HBSolution hb = assemble(omega, S, g);
    hb.Z = r.beta / S;
    const auto V = relay_voltage_fundamental(S, r);
    hb.P_bar = 0.5 * omega * S * V.V_cos;
    hb.phi_rel = std::atan2(-V.V_sin, V.V_cos);
    return hb;
}

BalanceResiduals balance_residuals(const HBSolution& hb, const RelaySpec& r, const Groups& g) {
    const auto ae = alpha_eta(g, r.M);
    const double Z = r.beta / hb.S;
    BalanceResiduals out;
    out.speed = hb.v_tilde - 0.5 * hb.omega * hb.S;
    out.dissipation = -2.0 * g.zeta * hb.S * hb.omega + ae.alpha * r.beta / hb.S - ae.eta;
    out.stiffness = ae.alpha * std::sqrt(std::max(0.0, 1.0 - Z * Z)) + hb.S * (1.0 - hb.omega * hb.omega);
    return out;
}

Optimum optimize(const Groups& g, double M) {
    if (!(g.zeta > 0.0)) throw InvalidParameter("zeta must be > 0 for the optimisation");
    const auto ae = alpha_eta(g, M);
    require_feasible(ae);
    const auto fr = friction_relay(g.n_f);
    Optimum o;
    o.Z_star = 1.0;
    o.S_star = (ae.alpha - ae.eta) / (2.0 * g.zeta);
    o.beta_star = o.S_star;
    o.omega_star = 1.0;
    o.v_com_bar_star = fr.a * (2.0 * g.pi_V * M - g.pi_f * (1.0 + fr.Delta) * std::sin(transition_angle(fr.Delta))) /
                       (kPi * g.zeta);
    o.P_bar_star = M / (g.zeta * kPi) * (ae.alpha - ae.eta);
    return o;
}

PowerSample power(double t, const HBSolution& hb, const RelaySpec& r) {
    const auto V = relay_voltage_fundamental(hb.S, r);
    const double wt = hb.omega * t;
    PowerSample p;
    p.instantaneous = hb.omega * hb.S * std::cos(wt) * (V.V_sin * std::sin(wt) + V.V_cos * std::cos(wt));
    p.average = 0.5 * hb.omega * hb.S * V.V_cos;
    return p;
}

double average_power(double Z, double M, const AlphaEta& ae, double zeta) {
    return M / (zeta * kPi) * Z * (ae.alpha * Z - ae.eta);
}

RelaySpec relay_from_manifold(const Groups& g) {
    const auto fd = folds(g);
    return {std::sqrt(g.pi_l / g.pi_c), fd.s_F_plus};
}

}  // namespace crawler
