#pragma once

/// Discrete energy, momentum and their L2 gradients on the truncated cylinder.
///
/// Quadrature is the diagonal SBP norm in x times the uniform rule dy = L/n_y in y,
/// so every integral carries the true measure of [x_min, x_max] x T_L.  The inner
/// product of two fields is <f, g> = sum_ij w_i dy Re(f_ij conj(g_ij)).

#include <vector>

#include "gpcyl/cylinder_field.hpp"

namespace gpcyl {

struct EnergyBreakdown {
    double kinetic_x = 0.0;  // 1/2 int |d_x psi|^2
    double kinetic_y = 0.0;  // lambda^2/2 int |d_y psi|^2
    double potential = 0.0;  // 1/4 int (1 - |psi|^2)^2
    double total = 0.0;
};

struct MomentumReport {
    /// Real representative: L * P(psi0) + 1/2 int <i d_x w0, w0>, boundary term included.
    double p_theta = 0.0;
    /// p_theta reduced modulo pi L into (-pi L/2, pi L/2].
    double p_untwisted = 0.0;
    /// Per-slice momenta p(y_j); their dy-weighted sum is p_theta.
    std::vector<double> slice_values;
    double slice_oscillation = 0.0;
    double theta_minus = 0.0;
    double theta_plus = 0.0;
    /// Whether p_theta is a genuine real momentum (psi0 lifts across the whole line).
    bool lifted = false;
    double period = 1.0;
};

struct Momentum1D {
    double p_theta = 0.0;
    double p_untwisted = 0.0;
    bool lifted = false;
};

EnergyBreakdown energy(const ComplexField2D& field);
double energy_1d(const std::vector<cplx>& psi, const Grid1D& grid);
double energy_1d(const Field1D& field);

MomentumReport momentum(const ComplexField2D& field, PhaseMode mode = PhaseMode::automatic);
Momentum1D momentum_1d(const Field1D& field, PhaseMode mode = PhaseMode::automatic);

/// p'(y_j) = sum_i w_i <i d_x psi, d_y psi>(x_i, y_j).
std::vector<double> slice_momentum_derivative(const ComplexField2D& field);
/// int_T |p'(y)| dy.
double slice_oscillation_bound(const ComplexField2D& field);

/// Exact gradient of the discrete energy with respect to the weighted inner product.
ComplexField2D grad_energy(const ComplexField2D& field);
/// Exact gradient of the discrete momentum p_theta (i d_x psi away from the edges).
ComplexField2D grad_momentum(const ComplexField2D& field);

double inner(const ComplexField2D& a, const ComplexField2D& b);
double norm(const ComplexField2D& a);
/// Weights w_i (dx included) of the x quadrature.
std::vector<double> x_weights(const CylinderGrid& grid);

/// d_c distance with eta_c centred at the midpoint of the x interval.
double distance_dc(const ComplexField2D& f1, const ComplexField2D& f2, double c);
double distance_dc_1d(const Field1D& f1, const Field1D& f2, double c);

struct Registration {
    double distance = 0.0;
    long shift = 0;     // cells by which f1 was moved to the right
    double phase = 0.0; // rotation applied to f1
};

/// Minimum of d_c(e^{i alpha} f1(. - s dx), f2) over |s| <= max_shift and alpha.
Registration distance_dc_registered(const ComplexField2D& f1, const ComplexField2D& f2, double c,
                                    long max_shift);

}  // namespace gpcyl
