#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gpcyl/spectral.hpp"
#include "gpcyl/stencil.hpp"
#include "support.hpp"

using namespace gpcyl;

TEST_CASE("summation by parts holds for random data") {
    gpcyl_test::Gen gen(2);
    for (int order : {2, 4}) {
        for (std::size_t n : {SbpOperator::min_size(order), std::size_t{17}, std::size_t{64}}) {
            const SbpOperator D(order, n);
            const double dx = gen.uniform(0.01, 1.0);
            std::vector<double> f(n), g(n);
            for (std::size_t i = 0; i < n; ++i) f[i] = gen.normal(), g[i] = gen.normal();
            const auto Df = D.apply(f, dx);
            const auto Dg = D.apply(g, dx);
            const auto w = D.weights(dx);
            double lhs = 0.0;
            for (std::size_t i = 0; i < n; ++i) lhs += w[i] * (Df[i] * g[i] + f[i] * Dg[i]);
            CHECK(lhs == doctest::Approx(f[n - 1] * g[n - 1] - f[0] * g[0]).epsilon(1e-11));
        }
    }
}

TEST_CASE("stencil is exact on low-degree polynomials") {
    for (int order : {2, 4}) {
        const std::size_t n = 40;
        const SbpOperator D(order, n);
        const double dx = 0.1;
        // interior order 2p is exact to degree 2p, boundary closure to degree p
        const int deg = order / 2;
        for (int d = 0; d <= deg; ++d) {
            std::vector<double> f(n);
            for (std::size_t i = 0; i < n; ++i) f[i] = std::pow(i * dx, d);
            const auto Df = D.apply(f, dx);
            for (std::size_t i = 0; i < n; ++i) {
                const double exact = d == 0 ? 0.0 : d * std::pow(i * dx, d - 1);
                CHECK(Df[i] == doctest::Approx(exact).epsilon(1e-10).scale(1.0));
            }
        }
        // quadrature integrates constants and x exactly
        const auto w = D.weights(dx);
        double s0 = 0, s1 = 0;
        for (std::size_t i = 0; i < n; ++i) s0 += w[i], s1 += w[i] * i * dx;
        CHECK(s0 == doctest::Approx((n - 1) * dx));
        CHECK(s1 == doctest::Approx(0.5 * std::pow((n - 1) * dx, 2)));
    }
}

TEST_CASE("transpose application agrees with the matrix transpose") {
    gpcyl_test::Gen gen(9);
    const SbpOperator D(4, 30);
    std::vector<double> f(30), g(30);
    for (std::size_t i = 0; i < 30; ++i) f[i] = gen.normal(), g[i] = gen.normal();
    std::vector<double> Dtg(30);
    D.apply_transpose(g.data(), Dtg.data(), 1, 0.3);
    const auto Df = D.apply(f, 0.3);
    double a = 0, b = 0;
    for (std::size_t i = 0; i < 30; ++i) a += Df[i] * g[i], b += f[i] * Dtg[i];
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("fourth-order closure converges at least at order two in the max norm") {
    auto err = [](std::size_t n) {
        const double dx = 2.0 / static_cast<double>(n - 1);
        const SbpOperator D(4, n);
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = std::sin(1.3 * (-1.0 + i * dx));
        const auto Df = D.apply(f, dx);
        double e = 0;
        for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(Df[i] - 1.3 * std::cos(1.3 * (-1.0 + i * dx))));
        return e;
    };
    const double rate = std::log2(err(101) / err(201));
    CHECK(rate > 1.8);
}

TEST_CASE("spectral y derivative and Laplacian") {
    const std::size_t nx = 3, ny = 16;
    const double L = 2.5;
    std::vector<cplx> v(nx * ny);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
            const double y = L * j / ny;
            v[i * ny + j] = cplx(std::cos(2 * std::numbers::pi * 3 * y / L), (i + 1.0) * std::sin(2 * std::numbers::pi * y / L));
        }
    const auto d = y_derivative(v, nx, ny, L);
    const auto lap = y_laplacian_negative(v, nx, ny, L);
    const double k1 = 2 * std::numbers::pi / L, k3 = 3 * k1;
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
            const double y = L * j / ny;
            const cplx dexact(-k3 * std::sin(k3 * y), (i + 1.0) * k1 * std::cos(k1 * y));
            const cplx lexact(k3 * k3 * std::cos(k3 * y), (i + 1.0) * k1 * k1 * std::sin(k1 * y));
            CHECK(std::abs(d[i * ny + j] - dexact) < 1e-12);
            CHECK(std::abs(lap[i * ny + j] - lexact) < 1e-11);
        }
}

TEST_CASE("Nyquist mode: no first derivative, full second-derivative symbol") {
    const std::size_t ny = 8;
    const double L = 1.0;
    std::vector<cplx> v(ny);
    for (std::size_t j = 0; j < ny; ++j) v[j] = (j % 2 == 0) ? 1.0 : -1.0;
    const auto d = y_derivative(v, 1, ny, L);
    const auto lap = y_laplacian_negative(v, 1, ny, L);
    const double kn = std::numbers::pi * ny / L;
    for (std::size_t j = 0; j < ny; ++j) {
        CHECK(std::abs(d[j]) < 1e-12);
        CHECK(std::abs(lap[j] - kn * kn * v[j]) < 1e-9);
    }
    CHECK(y_wavenumber(4, 8, 1.0) == 0.0);
    CHECK(y_wavenumber(5, 8, 1.0) == doctest::Approx(-6 * std::numbers::pi));
    CHECK(y_wavenumber_squared(4, 8, 1.0) == doctest::Approx(kn * kn));
}
