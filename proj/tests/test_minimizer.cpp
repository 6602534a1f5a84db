#include <doctest.h>

#include <cmath>

#include "gpcyl/errors.hpp"
#include "gpcyl/minimizer.hpp"
#include "gpcyl/soliton1d.hpp"
#include "gpcyl/sweep.hpp"
#include "support.hpp"

using namespace gpcyl;

TEST_CASE("options validation") {
    MinimizeOptions o;
    CHECK_NOTHROW(o.validate());
    auto bad = o;
    bad.max_iters = -1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = o;
    bad.step_init = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = o;
    bad.grad_tol = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = o;
    bad.backtrack_factor = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = o;
    bad.pohozaev_every = -3;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("Pohozaev rescale balances the x and transverse parts and never raises the energy") {
    gpcyl_test::Gen gen(17);
    const auto g = CylinderGrid::symmetric(20.0, 401, 8, 0.5, 1.0);
    for (int k = 0; k < 5; ++k) {
        const double c = gen.uniform(0.3, 1.2);
        auto f = gpcyl_test::add(sample_soliton_field(g, c), gpcyl_test::random_bump_field(g, gen, 0.05));
        const double before = energy(f).total;
        const auto [scaled, tau] = pohozaev_rescale(f);
        CHECK(tau > 0.0);
        CHECK(pohozaev_residual(scaled) < 1e-12);
        CHECK(energy(scaled).total <= before + 1e-12);
    }
    // the soliton is already balanced
    const auto sol = sample_soliton_field(CylinderGrid::symmetric(30.0, 1201, 4, 1.0, 1.0), 0.7);
    CHECK(pohozaev_residual(sol) < 1e-6);
}

TEST_CASE("speed estimate recovers the soliton speed") {
    const auto g = CylinderGrid::symmetric(30.0, 1201, 4, 1.0, 1.0);
    for (double c : {0.4, 0.9, -0.6}) {
        CHECK(estimate_speed(sample_soliton_field(g, c)) == doctest::Approx(c).epsilon(1e-6));
    }
}

TEST_CASE("minimizer at large lambda returns the y-independent soliton energy") {
    const double p = 0.5, lambda = 10.0;
    const auto g = CylinderGrid::symmetric(30.0, 601, 8, lambda, 1.0);
    const auto seed = perturbed_soliton_seed(g, p, 0.05, 3);
    MinimizeOptions o;
    o.max_iters = 1500;
    const auto r = minimize(seed, p, o);
    CHECK(r.converged);
    CHECK(r.status == "converged");
    CHECK(class_distance(r.momentum.p_theta, p, kPi) < 1e-9);
    CHECK(std::abs(r.energy.total - min_energy_1d(p)) < 1e-5);
    CHECK(r.energy.kinetic_y < 1e-10);
    CHECK(r.speed_estimate == doctest::Approx(speed_from_momentum(p)).epsilon(1e-3));
    REQUIRE(!r.history.empty());
    for (std::size_t k = 1; k < r.history.size(); ++k) {
        CHECK(r.history[k].energy <= r.history[k - 1].energy + 1e-10);
    }
}

TEST_CASE("minimizer rejects unliftable and far-away initial data") {
    const auto g = CylinderGrid::symmetric(20.0, 201, 4, 1.0, 1.0);
    const auto zero = ComplexField2D::filled(g, {0.0, 0.0});
    MinimizeOptions o;
    o.max_iters = 5;
    try {
        (void)minimize(zero, 0.5, o);
        FAIL("expected LiftError");
    } catch (const LiftError& e) {
        CHECK(e.iteration() == 0);
    }
    const auto sol = soliton_seed(g, 0.5);
    CHECK_THROWS_AS(minimize(sol, 0.5 + 0.45 * kPi, o), std::invalid_argument);
}

TEST_CASE("flatten_tails makes the outer columns y-independent") {
    gpcyl_test::Gen gen(5);
    const auto g = CylinderGrid::symmetric(10.0, 101, 8, 1.0, 1.0);
    auto f = sample_soliton_field(g, 0.5);
    for (auto& z : f.values) z += gen.complex(1e-3);
    flatten_tails(f);
    for (std::size_t j = 1; j < g.n_y; ++j) {
        CHECK(f.at(0, j) == f.at(0, 0));
        CHECK(f.at(g.n_x - 1, j) == f.at(g.n_x - 1, 0));
    }
}
