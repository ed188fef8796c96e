#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "crawlerlab/bifurcation.hpp"
#include "crawlerlab/errors.hpp"
#include "crawlerlab/simulate.hpp"
#include "support.hpp"

using namespace crawler;
using Catch::Approx;

namespace {

Trajectory synthetic_sine(double omega, double drift, double t_end, double dt) {
    Trajectory traj;
    for (double t = 0.0; t <= t_end; t += dt) {
        AugmentedState y;
        y << 0.0, drift, std::sin(omega * t), omega * std::cos(omega * t), drift * t;
        traj.times.push_back(t);
        traj.states.push_back(y);
    }
    return traj;
}

double distance_to_symmetric_fp(const State& x, const Groups& g) {
    const auto fp = fixed_points(g);
    return std::min((x - *fp.x_plus).norm(), (x - *fp.x_minus).norm());
}

}  // namespace

TEST_CASE("equilibrium start stays put", "[simulate]") {
    const Groups base = crawler::testing::strong_gain_groups();
    const Groups g = base.with_pi_s(0.5 * hopf_gain(base));
    const State xp = *fixed_points(g).x_plus;
    const IntegratorOptions opts;
    const auto traj = integrate(xp, g, 20.0, opts);
    const double band = opts.tol.abs + opts.tol.rel * xp.norm();
    for (const auto& y : traj.states) CHECK((y.head<4>() - xp).norm() <= band);
}

TEST_CASE("synthetic sine gives exact cycle metrics", "[simulate]") {
    const auto traj = synthetic_sine(2.0, 0.1, 60.0, 0.01);
    const auto m = cycle_metrics(traj, 0.0);
    CHECK(m.period == Approx(std::numbers::pi).epsilon(1e-8));
    CHECK(m.omega == Approx(2.0).epsilon(1e-8));
    CHECK(m.S_amp == Approx(1.0).epsilon(1e-4));
    CHECK(m.v_com_bar == Approx(0.1).epsilon(1e-10));
    CHECK(m.converged);
    const auto ups = strain_upcrossings(traj, 0.0);
    REQUIRE(ups.size() >= 2);
    CHECK(ups[0] == Approx(std::numbers::pi).epsilon(1e-8));
    CHECK(ups[1] == Approx(2.0 * std::numbers::pi).epsilon(1e-8));
}

TEST_CASE("too few crossings is not a cycle", "[simulate]") {
    CHECK_THROWS_AS(cycle_metrics(synthetic_sine(2.0, 0.0, 5.0, 0.01), 0.0), NoCycle);
}

TEST_CASE("below the Hopf gain the body rests", "[simulate]") {
    const Groups base = crawler::testing::strong_gain_groups();
    const Groups g = base.with_pi_s(0.95 * hopf_gain(base));
    const State x0 = *fixed_points(g).x_plus + State(1e-3, 0.0, 1e-3, 0.0);
    const auto traj = integrate(x0, g, 200.0, {.sample_dt = 0.01});
    CHECK(distance_to_symmetric_fp(traj.back().head<4>(), g) < 1e-6);
    CHECK_THROWS_AS(cycle_metrics(traj, 100.0), NoCycle);
}

TEST_CASE("above the Hopf gain the body crawls forward", "[simulate]") {
    const Groups base = crawler::testing::strong_gain_groups();
    const Groups g = base.with_pi_s(1.05 * hopf_gain(base));
    const State x0 = *fixed_points(g).x_plus + State(1e-3, 0.0, 1e-3, 0.0);
    const auto traj = integrate(x0, g, 200.0, {.sample_dt = 0.01});
    const auto m = cycle_metrics(traj, 100.0);
    CHECK(m.converged);
    CHECK(m.v_com_bar > 0.0);
    CHECK(m.S_amp > 0.1);
}

TEST_CASE("desk-scale relaxation oscillation", "[simulate]") {
    const Groups g = crawler::testing::fig3_groups();
    const auto traj = integrate(State(2.0, 0.0, 0.0, 0.0), g, 200.0, {.sample_dt = 1e-3});
    const auto m = cycle_metrics(traj, 20.0);
    CHECK(m.converged);
    CHECK(m.V_min < -1.0);
    CHECK(m.V_max > 1.0);
    CHECK(m.v_com_bar > 0.0);
}

TEST_CASE("trajectories are equivariant", "[simulate][symmetry]") {
    const Groups g = crawler::testing::strong_gain_groups().with_pi_s(2500.0);
    const State x0(0.3, 0.01, 0.2, -0.05);
    const IntegratorOptions opts{.tol = {1e-10, 1e-9}, .sample_dt = 0.05};
    const auto a = integrate(x0, g, 30.0, opts);
    const auto b = integrate(symmetry_action(x0), g, 30.0, opts);
    REQUIRE(a.times.size() == b.times.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        CHECK(a.times[i] == b.times[i]);
        worst = std::max(worst, (symmetry_action(a.states[i].head<4>()) - b.states[i].head<4>()).norm());
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("implicit and explicit paths agree", "[simulate]") {
    const Groups g = crawler::testing::strong_gain_groups().with_pi_s(2500.0);
    const State x0(0.3, 0.0, 0.2, 0.0);
    const auto ex = integrate(x0, g, 5.0, {.tol = {1e-10, 1e-10}, .method = IntegratorMethod::Explicit});
    const auto im = integrate(x0, g, 5.0, {.tol = {1e-10, 1e-10}, .method = IntegratorMethod::Implicit});
    CHECK(ex.stats.method_used == IntegratorMethod::Explicit);
    CHECK(im.stats.method_used == IntegratorMethod::Implicit);
    CHECK((ex.back() - im.back()).norm() < 1e-5 * (1.0 + ex.back().norm()));
}

TEST_CASE("step budget exhaustion is a stiffness failure", "[simulate]") {
    const Groups g = crawler::testing::fig3_groups();
    IntegratorOptions opts;
    opts.method = IntegratorMethod::Explicit;
    opts.max_steps = 50;
    CHECK_THROWS_AS(integrate(State(2.0, 0.0, 0.0, 0.0), g, 50.0, opts), StiffnessFailure);
}

TEST_CASE("sampling interval decimates the output", "[simulate]") {
    const Groups g = crawler::testing::strong_gain_groups().with_pi_s(2500.0);
    const auto traj = integrate(State(0.3, 0.0, 0.2, 0.0), g, 10.0, {.sample_dt = 0.5});
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == 10.0);
    for (std::size_t i = 1; i + 1 < traj.times.size(); ++i) CHECK(traj.times[i] - traj.times[i - 1] >= 0.5);
}
