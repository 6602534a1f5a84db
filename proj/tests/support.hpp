#pragma once

// Small generators for property tests and a few independent oracles.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "gpcyl/cylinder_field.hpp"

namespace gpcyl_test {

using cplx = std::complex<double>;

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
    double normal() { return std::normal_distribution<double>()(rng); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
    cplx complex(double scale = 1.0) { return {scale * normal(), scale * normal()}; }
};

inline double bump(double s) {
    const double t = 1.0 - s * s;
    return t > 0.0 ? t * t * t : 0.0;
}

// Smooth perturbation supported in |x - x0| < r, away from the tails when r is small.
inline gpcyl::ComplexField2D random_bump_field(const gpcyl::CylinderGrid& g, Gen& gen, double amp,
                                               double max_x = 3.0, double r = 3.0) {
    auto h = gpcyl::ComplexField2D::filled(g, {0.0, 0.0});
    for (int k = 0; k < 3; ++k) {
        const double x0 = gen.uniform(-max_x, max_x);
        const int mode = gen.integer(-2, 2);
        const cplx a = gen.complex(amp);
        for (std::size_t i = 0; i < g.n_x; ++i) {
            const double b = bump((g.x(i) - x0) / r);
            if (b == 0.0) continue;
            for (std::size_t j = 0; j < g.n_y; ++j) {
                h.at(i, j) += a * b * std::polar(1.0, 2.0 * std::numbers::pi * mode * g.y(j) / g.period_L);
            }
        }
    }
    return h;
}

inline gpcyl::ComplexField2D add(const gpcyl::ComplexField2D& a, const gpcyl::ComplexField2D& b, double s = 1.0) {
    auto out = a;
    for (std::size_t q = 0; q < out.values.size(); ++q) out.values[q] += s * b.values[q];
    return out;
}

// Trapezoid quadrature of f on [a, b] with n intervals.
template <class F>
double trapezoid(F&& f, double a, double b, std::size_t n) {
    const double h = (b - a) / static_cast<double>(n);
    double s = 0.5 * (f(a) + f(b));
    for (std::size_t i = 1; i < n; ++i) s += f(a + h * static_cast<double>(i));
    return s * h;
}

}  // namespace gpcyl_test
