#include "crawlerlab/params.hpp"

#include <cmath>
#include <string>

#include "crawlerlab/errors.hpp"

namespace crawler {

namespace {

void require(bool ok, const char* field, const char* rule) {
    if (!ok) throw InvalidParameter(std::string(field) + " must be " + rule);
}

void positive(double v, const char* field) { require(std::isfinite(v) && v > 0.0, field, "finite and > 0"); }
void non_negative(double v, const char* field) { require(std::isfinite(v) && v >= 0.0, field, "finite and >= 0"); }

}  // namespace

void validate(const DimensionalParams& p) {
    positive(p.m, "m");
    positive(p.ell, "ell");
    positive(p.k, "k");
    non_negative(p.b, "b");
    positive(p.A_sigma, "A_sigma");
    positive(p.k_v, "k_v");
    positive(p.c, "c");
    positive(p.kappa, "kappa");
    positive(p.rho, "rho");
    positive(p.gamma_p, "gamma_p");
    positive(p.eps_f, "eps_f");
    non_negative(p.n_f, "n_f");
}

void validate(const Groups& g) {
    non_negative(g.zeta, "zeta");
    positive(g.pi_f, "pi_f");
    positive(g.pi_V, "pi_V");
    positive(g.pi_eps, "pi_eps");
    non_negative(g.n_f, "n_f");
    positive(g.pi_c, "pi_c");
    positive(g.pi_l, "pi_l");
    positive(g.pi_s, "pi_s");
    positive(g.eps, "eps");
}

Scales characteristic_scales(const DimensionalParams& p) {
    positive(p.m, "m");
    positive(p.k, "k");
    positive(p.c, "c");
    positive(p.kappa, "kappa");
    positive(p.ell, "ell");
    Scales sc;
    sc.omega_n = std::sqrt(2.0 * p.k / p.m);
    sc.t_star = 1.0 / sc.omega_n;
    sc.l_star = p.ell;
    sc.m_star = 2.0 * p.m;
    sc.V_star = 100.0 * std::sqrt(p.c / (sc.t_star * p.kappa));
    return sc;
}

Groups nondimensionalize(const DimensionalParams& p, const Scales& sc, double eps) {
    validate(p);
    positive(sc.l_star, "l_star");
    positive(sc.t_star, "t_star");
    positive(sc.V_star, "V_star");
    positive(eps, "eps");
    Groups g;
    g.zeta = p.b / std::sqrt(2.0 * p.m * p.k);
    g.pi_f = p.A_sigma / (2.0 * p.k * sc.l_star);
    g.pi_V = 0.5 * p.k_v * sc.V_star / (p.k * sc.l_star);
    g.pi_eps = sc.l_star / (sc.t_star * p.eps_f);
    g.n_f = p.n_f;
    g.pi_c = p.kappa * sc.V_star * sc.V_star * sc.t_star / p.c;
    g.pi_l = p.rho * sc.t_star / p.c;
    g.pi_s = p.gamma_p * sc.l_star * sc.t_star / (p.c * sc.V_star);
    g.eps = eps;
    return g;
}

double pi_eps_for_gamma(double gamma, double pi_f, double zeta, double n_f) {
    positive(pi_f, "pi_f");
    const double excess = gamma - 2.0 * zeta;
    require(excess > 0.0, "gamma", "greater than 2 zeta");
    const double sech = 1.0 / std::cosh(n_f);
    return excess * (1.0 + std::tanh(n_f)) / (pi_f * sech * sech);
}

}  // namespace crawler
