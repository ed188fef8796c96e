#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "crawlerlab/dynamics.hpp"
#include "crawlerlab/equilibria.hpp"
#include "crawlerlab/gsp.hpp"
#include "crawlerlab/oracles.hpp"
#include "support.hpp"

using namespace crawler;
using Catch::Approx;

TEST_CASE("friction fraction limits", "[dynamics]") {
    CHECK(sigma_dimensional(0.0, 1e-3, 1.5) == 0.0);
    CHECK(sigma_dimensional(-1e3, 1e-3, 1.5) == Approx(-1.0).epsilon(1e-14));
    const double delta = (1.0 - std::tanh(1.5)) / (1.0 + std::tanh(1.5));
    CHECK(sigma_dimensional(1e3, 1e-3, 1.5) == Approx(delta).epsilon(1e-14));
    CHECK(friction_forward_limit(1.5) == Approx(delta).epsilon(1e-15));
    CHECK(sigma_pi(0.0, 4.7e3, 1.5) == 0.0);
}

TEST_CASE("friction slope at rest for desk-scale values", "[dynamics]") {
    const auto d = sigma_pi_derivatives(0.0, 4.7e3, 1.5);
    CHECK(d.d1 == Approx(445.9).epsilon(1e-3));
    Groups g = crawler::testing::fig3_groups();
    CHECK(d.d1 == Approx(oracle::sigma_derivative_fd(0.0, g, 1)).epsilon(1e-9));
}

TEST_CASE("friction derivatives match finite differences", "[dynamics][oracle]") {
    Groups g;
    g.pi_eps = 3.0;
    g.n_f = 0.4;
    for (double u : {-0.7, -0.1, 0.0, 0.05, 0.3, 1.2}) {
        const auto d = sigma_pi_derivatives(u, g.pi_eps, g.n_f);
        CHECK(d.value == Approx(sigma_pi(u, g.pi_eps, g.n_f)).epsilon(1e-15));
        CHECK(d.d1 == Approx(oracle::sigma_derivative_fd(u, g, 1)).epsilon(1e-9).margin(1e-11));
        CHECK(d.d2 == Approx(oracle::sigma_derivative_fd(u, g, 2)).epsilon(1e-7).margin(1e-9));
        CHECK(d.d3 == Approx(oracle::sigma_derivative_fd(u, g, 3)).epsilon(1e-5).margin(1e-7));
    }
}

TEST_CASE("derivatives stay finite far in the saturated tails", "[dynamics]") {
    const auto d = sigma_pi_derivatives(50.0, 4.7e3, 1.5);
    CHECK(std::isfinite(d.d1));
    CHECK(std::isfinite(d.d3));
    CHECK(d.d1 >= 0.0);
}

TEST_CASE("origin and symmetric fixed points are equilibria", "[dynamics]") {
    const Groups g = crawler::testing::fig3_groups().with_pi_s(1.0e4);
    CHECK(vector_field(State::Zero(), g).norm() == 0.0);
    const auto fp = fixed_points(g);
    REQUIRE(fp.x_plus.has_value());
    CHECK(vector_field(*fp.x_plus, g).norm() < 1e-12 * g.pi_l);
    CHECK(vector_field(*fp.x_minus, g).norm() < 1e-12 * g.pi_l);
}

TEST_CASE("symmetry action", "[dynamics][symmetry]") {
    const State x(1, 2, 3, 4);
    CHECK(symmetry_action(x) == State(-1, 2, -3, -4));
    CHECK(symmetry_action(symmetry_action(x)) == x);
    const auto fp = fixed_points(crawler::testing::fig3_groups().with_pi_s(1.0e4));
    CHECK(symmetry_action(*fp.x_plus) == *fp.x_minus);
}

TEST_CASE("vector field is equivariant", "[dynamics][symmetry]") {
    const Groups g = crawler::testing::fig3_groups();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const State x(u(rng), 0.01 * u(rng), u(rng), 0.01 * u(rng));
        const State lhs = vector_field(symmetry_action(x), g);
        const State rhs = symmetry_action(vector_field(x, g));
        CHECK((lhs - rhs).norm() <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + rhs.norm()));
    }
}

TEST_CASE("augmented field carries the centre-of-mass speed", "[dynamics]") {
    const Groups g = crawler::testing::fig3_groups();
    AugmentedState y;
    y << 0.3, 0.02, -0.1, 0.01, 5.0;
    const auto dy = augmented_vector_field(y, g);
    CHECK(dy[kUcom] == y[kVcom]);
    CHECK(dy.head<4>() == vector_field(y.head<4>(), g));
}

TEST_CASE("slow field reduces to the critical manifold residual", "[dynamics][gsp]") {
    const Groups g = crawler::testing::fig3_groups();
    const State x(0.4, 0.01, -0.2, 0.03);
    const State slow = slow_vector_field(x, g);
    CHECK(slow[kV] == Approx(-critical_manifold_residual(x[kV], x[kS], g) / g.eps).epsilon(1e-14));
    CHECK(slow_vector_field(State::Zero(), g).norm() == 0.0);
    const State full = vector_field(x, g);
    for (int i = 1; i < 4; ++i) CHECK(slow[i] == Approx(full[i]).epsilon(1e-15));
}

TEST_CASE("fast field freezes the slow variables in the layer limit", "[dynamics][gsp]") {
    Groups g = crawler::testing::fig3_groups();
    const State x(0.4, 0.01, -0.2, 0.03);
    const State fast = fast_vector_field(x, g);
    CHECK(fast[kV] == Approx(-critical_manifold_residual(x[kV], x[kS], g)).epsilon(1e-14));
    g.eps = 1e-12;
    const State layer = fast_vector_field(x, g);
    CHECK(std::abs(layer[kVcom]) < 1e-9);
    CHECK(std::abs(layer[kS]) < 1e-9);
    CHECK(std::abs(layer[kVs]) < 1e-9);
}

TEST_CASE("desingularized field vanishes at folded singularities", "[dynamics][gsp]") {
    const Groups g = crawler::testing::fig3_groups();
    const auto fd = folds(g);
    for (double VF : {fd.V_F_plus, fd.V_F_minus}) {
        const ReducedState y(VF, 0.0, 0.0);
        CHECK(desingularized_vector_field(y, g).norm() < 1e-12);
    }
    CHECK(desingularized_vector_field(ReducedState(0.3, 0.0, 0.0), g).norm() > 1e-3);
}
