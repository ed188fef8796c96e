#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "crawlerlab/describing.hpp"
#include "crawlerlab/errors.hpp"
#include "crawlerlab/relay_sim.hpp"
#include "support.hpp"

using namespace crawler;
using Catch::Approx;

namespace {

Groups fig5_groups() { return crawler::testing::fixture_groups("fig5.json"); }

}  // namespace

TEST_CASE("relay loop at the matched threshold", "[relay]") {
    const Groups g = fig5_groups();
    const auto opt = optimize(g, 2.0);
    const auto sim = simulate_relay_loop(g, RelaySpec{2.0, opt.beta_star});
    REQUIRE(sim.switching);
    CHECK(sim.switches > 50);
    CHECK(sim.omega == Approx(2.0 * std::numbers::pi / sim.period).epsilon(1e-12));
    // Reference from a smooth steep-friction integration extrapolated in the slope.
    CHECK(sim.omega == Approx(1.1724).epsilon(1e-3));
    CHECK(sim.v_com_bar == Approx(0.2062).epsilon(5e-3));
    CHECK(sim.S_amp > opt.beta_star);
}

TEST_CASE("comparison report carries relative deviations", "[relay]") {
    const Groups g = fig5_groups();
    const auto opt = optimize(g, 2.0);
    const auto cmp = hb_vs_simulation(g, RelaySpec{2.0, opt.beta_star});
    CHECK(cmp.hb.omega == Approx(1.0).epsilon(1e-12));
    CHECK(cmp.dev_omega == Approx(std::abs(cmp.sim.omega - cmp.hb.omega) / cmp.hb.omega).epsilon(1e-12));
    CHECK(cmp.dev_S == Approx(std::abs(cmp.sim.S_amp - cmp.hb.S) / cmp.hb.S).epsilon(1e-12));
    CHECK(cmp.dev_S < 0.1);
}

TEST_CASE("isotropic friction cannot rectify", "[relay]") {
    Groups g = fig5_groups();
    g.n_f = 0.0;
    g.pi_f = 0.5;  // below the relay force so the segments can slip
    const auto sim = simulate_relay_loop(g, RelaySpec{2.0, 0.3});
    REQUIRE(sim.switching);
    CHECK(std::abs(sim.v_com_bar) < 1e-6);
}

TEST_CASE("threshold out of reach never switches", "[relay]") {
    const Groups g = fig5_groups();
    const auto sim = simulate_relay_loop(g, RelaySpec{2.0, 50.0}, RelaySimOptions{.t_end = 50.0, .transient = 10.0});
    CHECK_FALSE(sim.switching);
}

TEST_CASE("anisotropic friction drives the body forward", "[relay]") {
    const Groups g = fig5_groups();
    for (double beta : {0.2, 0.35, 0.5}) {
        const auto sim = simulate_relay_loop(g, RelaySpec{2.0, beta});
        REQUIRE(sim.switching);
        CHECK(sim.v_com_bar > 0.0);
    }
}
