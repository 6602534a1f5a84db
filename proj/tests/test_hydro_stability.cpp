#include <doctest.h>

#include <cmath>

#include "gpcyl/errors.hpp"
#include "gpcyl/hydro_stability.hpp"
#include "gpcyl/soliton1d.hpp"

using namespace gpcyl;

namespace {

HydroPerturbation scaled(const HydroPerturbation& e, double s) {
    HydroPerturbation out = e;
    for (auto& v : out.eps_eta) v *= s;
    for (auto& v : out.eps_v) v *= s;
    return out;
}

double plain_pairing(const Grid1D& g, const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) s += a[i] * b[i];
    return s * g.dx;
}

}  // namespace

TEST_CASE("hydrodynamic functionals of the soliton match the closed forms") {
    const auto grid = Grid1D::span(-25.0, 25.0, 5001);
    for (double c : {0.3, 0.8, -0.8, 1.3}) {
        const auto pair = soliton_hydro(c, grid);
        CHECK(hydro_energy(pair) == doctest::Approx(soliton_energy(c)).epsilon(1e-7));
        CHECK(hydro_momentum(pair) == doctest::Approx(soliton_momentum(c)).epsilon(1e-9));
        // v_c = c eta_c / (2 (1 - eta_c))
        for (std::size_t i = 0; i < grid.n; i += 500) {
            const double eta = pair.eta[i];
            CHECK(pair.v[i] == doctest::Approx(c * eta / (2.0 * (1.0 - eta))).epsilon(1e-13));
        }
    }
    CHECK_THROWS_AS(soliton_hydro(0.0, grid), DomainError);
}

TEST_CASE("Taylor identity closes to round-off") {
    const auto grid = Grid1D::span(-20.0, 20.0, 4001);
    for (double c : {0.5, 1.0}) {
        const SolitonExpansion ex(c, grid);
        const double E0 = hydro_energy(ex.base());
        const double P0 = hydro_momentum(ex.base());
        for (int k = 0; k < 20; ++k) {
            const auto eps = smooth_random_perturbation(grid, 1000 + k, 0.05);
            const auto moved = ex.perturbed(eps);
            CHECK(std::abs(hydro_energy(moved) - (E0 + ex.dE(eps) + 0.5 * ex.d2E(eps) + ex.remainder(eps))) <= 1e-10);
            CHECK(std::abs(hydro_momentum(moved) - (P0 + ex.dP(eps) + 0.5 * ex.d2P(eps))) <= 1e-12);
        }
    }
}

TEST_CASE("soliton is critical for E - cP") {
    const auto grid = Grid1D::span(-20.0, 20.0, 8001);
    for (double c : {0.5, 1.0, -0.7}) {
        const SolitonExpansion ex(c, grid);
        for (int k = 0; k < 10; ++k) {
            const auto eps = smooth_random_perturbation(grid, 50 + k, 0.1);
            CHECK(std::abs(ex.dE(eps) - c * ex.dP(eps)) <= 1e-8);
        }
    }
}

TEST_CASE("second variations agree with second differences") {
    const auto grid = Grid1D::span(-15.0, 15.0, 1501);
    const SolitonExpansion ex(0.6, grid);
    const auto eps = smooth_random_perturbation(grid, 3, 0.1);
    const double h = 1e-3;
    const double e0 = hydro_energy(ex.base());
    const double fd = (hydro_energy(ex.perturbed(scaled(eps, h))) - 2.0 * e0 +
                       hydro_energy(ex.perturbed(scaled(eps, -h)))) / (h * h);
    CHECK(fd == doctest::Approx(ex.d2E(eps)).epsilon(1e-5));
    // P is quadratic: 1/2 d2P = int eps_eta eps_v / 2 with the grid quadrature
    CHECK(ex.d2P(eps) == doctest::Approx(plain_pairing(grid, eps.eps_eta, eps.eps_v)).epsilon(1e-6));
    CHECK(ex.dE(scaled(eps, 2.0)) == doctest::Approx(2.0 * ex.dE(eps)));
    CHECK(ex.d2E(scaled(eps, 2.0)) == doctest::Approx(4.0 * ex.d2E(eps)));
}

TEST_CASE("projection removes translation and momentum directions") {
    const auto grid = Grid1D::span(-20.0, 20.0, 2001);
    for (double c : {0.3, 0.9, -1.1}) {
        const SolitonExpansion ex(c, grid);
        for (int k = 0; k < 10; ++k) {
            const auto eps = smooth_random_perturbation(grid, 77 + k, 0.1);
            const auto pr = ex.project_orthogonal(eps);
            const double scale = std::sqrt(ex.norm_squared(eps));
            CHECK(std::abs(ex.translation_pairing(pr)) <= 1e-12 * scale);
            CHECK(std::abs(ex.dP(pr)) <= 1e-12 * scale);
            const auto twice = ex.project_orthogonal(pr);
            for (std::size_t i = 0; i < grid.n; i += 97) CHECK(twice.eps_eta[i] == doctest::Approx(pr.eps_eta[i]));
        }
    }
}

TEST_CASE("coercivity on projected perturbations") {
    const auto grid = Grid1D::span(-20.0, 20.0, 2001);
    for (double c : {0.3, 0.6, 0.9, 1.2, -0.6}) {
        const auto rep = coercivity_probe(c, grid, 40, 11);
        CHECK(rep.failures == 0);
        CHECK(rep.min_ratio > 0.0);
    }
}

TEST_CASE("domain errors") {
    const auto grid = Grid1D::span(-10.0, 10.0, 401);
    const SolitonExpansion ex(0.2, grid);
    HydroPerturbation eps{std::vector<double>(grid.n, 0.0), std::vector<double>(grid.n, 0.0)};
    eps.eps_eta[grid.n / 2] = 0.5;  // 1 - eta_c(0) is about 0.02
    CHECK_THROWS_AS(ex.remainder(eps), DomainError);
    HydroPair bad{grid, std::vector<double>(grid.n, 0.0), std::vector<double>(grid.n, 0.0)};
    bad.eta[3] = 1.0;
    CHECK_THROWS_AS(hydro_energy(bad), DomainError);
    HydroPerturbation short_eps{std::vector<double>(3, 0.0), std::vector<double>(3, 0.0)};
    CHECK_THROWS(ex.dE(short_eps));
}
