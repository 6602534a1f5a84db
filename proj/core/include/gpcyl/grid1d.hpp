#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace gpcyl {

using cplx = std::complex<double>;

/// Uniform grid on a truncated x-interval.
struct Grid1D {
    double x_min = -30.0;
    double dx = 0.1;
    std::size_t n = 601;
    int stencil_order = 4;

    double x(std::size_t i) const { return x_min + dx * static_cast<double>(i); }
    double x_max() const { return x(n - 1); }

    /// n nodes spanning [a, b] inclusive.
    static Grid1D span(double a, double b, std::size_t n, int order = 4);
};

/// Complex samples on a Grid1D.
struct Field1D {
    Grid1D grid;
    std::vector<cplx> values;
    std::size_t tail_width = 8;
};

/// Real hydrodynamic pair (eta, v) = (1 - rho^2, theta') on a 1D grid.
struct HydroPair {
    Grid1D grid;
    std::vector<double> eta;
    std::vector<double> v;
};

/// Perturbation of a HydroPair, same grid.
struct HydroPerturbation {
    std::vector<double> eps_eta;
    std::vector<double> eps_v;
};

}  // namespace gpcyl
