#pragma once

/// Minimization of the discrete E_lambda at fixed momentum class by a projected,
/// preconditioned gradient flow with Newton corrections of the momentum drift and
/// periodic Pohozaev rescaling.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gpcyl/functionals.hpp"

namespace gpcyl {

struct MinimizeOptions {
    int max_iters = 3000;
    /// Initial step; with preconditioning the natural scale is O(1).
    double step_init = 0.5;
    /// Tolerance on ||G - c M|| in the weighted L2 norm.
    double grad_tol = 1e-7;
    /// Tolerance on the class distance between [P] and the target.
    double momentum_tol = 1e-10;
    /// Rescale x by the Pohozaev factor every this many iterations (0 = never).
    int pohozaev_every = 25;
    double backtrack_factor = 0.5;
    std::uint64_t seed = 1;
    /// Precondition by (1 - d_xx - lambda^2 d_yy)^{-1}; false gives the plain L2 flow.
    bool precondition = true;
    double armijo = 1e-4;
    double max_step = 4.0;
    double min_step = 1e-14;

    void validate() const;
};

struct HistoryEntry {
    int iter = 0;
    double energy = 0.0;
    double momentum = 0.0;
    double grad_norm = 0.0;
};

struct MinimizeResult {
    ComplexField2D field;
    EnergyBreakdown energy;
    MomentumReport momentum;
    double speed_estimate = 0.0;
    int iterations = 0;
    bool converged = false;
    double pohozaev_residual = 0.0;
    double grad_norm = 0.0;
    std::vector<HistoryEntry> history;
    /// "converged", "max_iters" or "stalled".
    std::string status;
};

/// target_p is a class modulo pi * period_L; the initial field must lie within a
/// quarter of that period of it.  Throws LiftError (iteration 0) if the initial
/// field has no liftable tails.
MinimizeResult minimize(const ComplexField2D& initial, double target_p, const MinimizeOptions& opts);

/// x-dilation psi(tau x) with tau = sqrt(B/A), realized by scaling the interval.
std::pair<ComplexField2D, double> pohozaev_rescale(const ComplexField2D& field);
/// |A - B| / (A + B) with A = kinetic_x, B = kinetic_y + potential.
double pohozaev_residual(const ComplexField2D& field);

/// Least-squares c minimizing ||grad_energy - c grad_momentum||.
double estimate_speed(const ComplexField2D& field);

/// Replaces the outermost tail columns by their y-average.
void flatten_tails(ComplexField2D& field);

}  // namespace gpcyl
