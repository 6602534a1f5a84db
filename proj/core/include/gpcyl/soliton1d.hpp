#pragma once

/// Closed-form dark soliton quantities.
///
/// The profile is the travelling wave of speed c solving
///   i c u' + u'' + (1 - |u|^2) u = 0,
/// with momentum P = 1/2 int <i u', u> renormalized by the phase at infinity.

#include <complex>
#include <numbers>

#include "gpcyl/grid1d.hpp"

namespace gpcyl {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrt2 = std::numbers::sqrt2;

/// u_c(x) = sqrt((2-c^2)/2) tanh(sqrt(2-c^2) x / 2) - i c / sqrt(2).
std::complex<double> soliton_profile(double c, double x);
std::complex<double> soliton_profile_derivative(double c, double x);

/// (2 - c^2)^{3/2} / 3.
double soliton_energy(double c);

/// Soliton momentum as a function of speed on [0, sqrt 2).
double xi(double c);
/// -sqrt(2 - c^2).
double xi_derivative(double c);

/// sign(c) xi(|c|); throws for c = 0 (the black soliton only has a class).
double soliton_momentum(double c);

/// Canonical representative of p modulo `period` in (-period/2, period/2].
double reduce_momentum(double p, double period = kPi);
/// Distance between the classes of a and b in R / period Z.
double class_distance(double a, double b, double period = kPi);

/// Inverse of soliton_momentum on the untwisted classes: c_p with P(u_{c_p}) = [p].
double speed_from_momentum(double p);
/// Derivative dc_p/dp = -1/sqrt(2 - c_p^2).
double speed_from_momentum_derivative(double p);

/// Minimal 1D energy at untwisted momentum p; 0 for the zero class.
double min_energy_1d(double p);
/// Infimum of the 1D energy at real (lifted) momentum q on the line.
double full_line_min_energy(double q);

/// eta_c(x) = (2-c^2) / (2 cosh^2(sqrt(2-c^2) x / 2)).
double soliton_eta(double c, double x);

/// Hydrodynamic variables of u_c sampled on a grid; c must be nonzero.
HydroPair soliton_hydro(double c, const Grid1D& grid);

}  // namespace gpcyl
