#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "crawlerlab/dynamics.hpp"
#include "crawlerlab/errors.hpp"
#include "crawlerlab/params.hpp"
#include "support.hpp"

using namespace crawler;
using Catch::Approx;
using crawler::testing::rel_err;

namespace {

DimensionalParams sample_params() {
    DimensionalParams p;
    p.m = 0.02;
    p.ell = 0.05;
    p.k = 30.0;
    p.b = 0.4;
    p.A_sigma = 0.3;
    p.k_v = 0.8;
    p.c = 2e-6;
    p.kappa = 3e-3;
    p.rho = 0.2;
    p.gamma_p = 4.0;
    p.eps_f = 1e-3;
    p.n_f = 0.7;
    return p;
}

}  // namespace

TEST_CASE("characteristic scales from mass and stiffness", "[params]") {
    DimensionalParams p = sample_params();
    p.m = 2.0;
    p.k = 1.0;
    auto sc = characteristic_scales(p);
    CHECK(sc.omega_n == Approx(1.0).epsilon(1e-15));
    CHECK(sc.t_star == Approx(1.0).epsilon(1e-15));

    p.m = 0.5;
    sc = characteristic_scales(p);
    CHECK(sc.omega_n == Approx(2.0).epsilon(1e-15));
    CHECK(sc.t_star == Approx(0.5).epsilon(1e-15));
}

TEST_CASE("voltage scale arithmetic", "[params]") {
    DimensionalParams p = sample_params();
    p.c = 1e-6;
    p.kappa = 10.0;
    p.k = 1.0;
    p.m = 2.0 * 0.01;  // t_star = sqrt(m / 2k) = 0.1
    const auto sc = characteristic_scales(p);
    REQUIRE(sc.t_star == Approx(0.1).epsilon(1e-14));
    CHECK(sc.V_star == Approx(0.1).epsilon(1e-12));
}

TEST_CASE("scales reject non-positive inputs", "[params]") {
    for (double DimensionalParams::*field : {&DimensionalParams::m, &DimensionalParams::k, &DimensionalParams::c,
                                            &DimensionalParams::kappa}) {
        DimensionalParams p = sample_params();
        p.*field = 0.0;
        CHECK_THROWS_AS(characteristic_scales(p), InvalidParameter);
        p.*field = -1.0;
        CHECK_THROWS_AS(characteristic_scales(p), InvalidParameter);
    }
}

TEST_CASE("zero damping gives zero zeta", "[params]") {
    DimensionalParams p = sample_params();
    p.b = 0.0;
    CHECK(nondimensionalize(p, characteristic_scales(p)).zeta == 0.0);
}

TEST_CASE("friction ratio identity", "[params]") {
    DimensionalParams p = sample_params();
    const auto sc = characteristic_scales(p);
    p.A_sigma = 2.0 * p.k * sc.l_star;
    CHECK(nondimensionalize(p, sc).pi_f == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("groups are invariant under consistent unit changes", "[params][property]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logu(-3.0, 3.0);
    const DimensionalParams base = sample_params();
    const Groups g0 = nondimensionalize(base, characteristic_scales(base));
    for (int trial = 0; trial < 200; ++trial) {
        // Unit factors for mass, length, time and charge; volts follow from energy per charge.
        const double M = std::pow(10.0, logu(rng));
        const double L = std::pow(10.0, logu(rng));
        const double T = std::pow(10.0, logu(rng));
        const double Q = std::pow(10.0, logu(rng));
        const double volt = M * L * L / (T * T * Q);
        const double amp = Q / T;
        const double farad = Q / volt;
        DimensionalParams p;
        p.m = base.m / M;
        p.ell = base.ell / L;
        p.k = base.k / (M / (T * T));
        p.b = base.b / (M / T);
        p.A_sigma = base.A_sigma / (M * L / (T * T));
        p.k_v = base.k_v / (amp * T / L);
        p.c = base.c / farad;
        p.kappa = base.kappa / (amp / (volt * volt * volt));
        p.rho = base.rho / (amp / volt);
        p.gamma_p = base.gamma_p / (amp / L);
        p.eps_f = base.eps_f / (L / T);
        p.n_f = base.n_f;
        const Groups g = nondimensionalize(p, characteristic_scales(p));
        CHECK(rel_err(g.zeta, g0.zeta) < 1e-12);
        CHECK(rel_err(g.pi_f, g0.pi_f) < 1e-12);
        CHECK(rel_err(g.pi_V, g0.pi_V) < 1e-12);
        CHECK(rel_err(g.pi_eps, g0.pi_eps) < 1e-12);
        CHECK(rel_err(g.pi_c, g0.pi_c) < 1e-12);
        CHECK(rel_err(g.pi_l, g0.pi_l) < 1e-12);
        CHECK(rel_err(g.pi_s, g0.pi_s) < 1e-12);
        CHECK(g.n_f == g0.n_f);
    }
}

TEST_CASE("dimensional field maps onto the dimensionless field", "[params][dynamics]") {
    const DimensionalParams p = sample_params();
    const Scales sc = characteristic_scales(p);
    const Groups g = nondimensionalize(p, sc);
    const double vel = sc.l_star / sc.t_star;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const State x(u(rng), 1e-3 * u(rng), 0.5 * u(rng), 1e-3 * u(rng));
        const State X(sc.V_star * x[kV], vel * x[kVcom], sc.l_star * x[kS], vel * x[kVs]);
        const State dX = dimensional_vector_field(X, p);
        const State dx = vector_field(x, g);
        const State mapped(dX[kV] * sc.t_star / sc.V_star, dX[kVcom] * sc.t_star / vel, dX[kS] * sc.t_star / sc.l_star,
                           dX[kVs] * sc.t_star / vel);
        for (int i = 0; i < 4; ++i) CHECK(mapped[i] == Approx(dx[i]).epsilon(1e-10).margin(1e-10 * dx.norm()));
    }
}

TEST_CASE("friction slope for a requested composite gain", "[params]") {
    Groups g;
    g.zeta = 0.5;
    g.pi_f = 1.0;
    g.n_f = 0.5;
    g.pi_eps = pi_eps_for_gamma(2.0, g.pi_f, g.zeta, g.n_f);
    const auto d = sigma_pi_derivatives(0.0, g.pi_eps, g.n_f);
    CHECK(g.pi_f * d.d1 + 2.0 * g.zeta == Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(pi_eps_for_gamma(0.5, 1.0, 0.5, 0.5), InvalidParameter);
}

TEST_CASE("group validation", "[params]") {
    Groups g = crawler::testing::fig3_groups();
    CHECK_NOTHROW(validate(g));
    g.pi_c = 0.0;
    CHECK_THROWS_AS(validate(g), InvalidParameter);
    g = crawler::testing::fig3_groups();
    g.zeta = -1.0;
    CHECK_THROWS_AS(validate(g), InvalidParameter);
    g = crawler::testing::fig3_groups();
    g.pi_l = std::nan("");
    CHECK_THROWS_AS(validate(g), InvalidParameter);
}
