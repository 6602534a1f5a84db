#pragma once

/// Explicit competitor fields: the 1D scaling family with energy tending to
/// sqrt(2)|p|, the periodized vortex pair, and the winding sequence along which
/// the real momentum jumps by pi while the field converges to the black soliton.

#include <functional>

#include "gpcyl/cylinder_field.hpp"

namespace gpcyl {

/// Phase profile xi for the scaling family; only xi' enters the momentum.
struct PhaseProfile {
    std::function<double(double)> value;  // xi(s)
    std::function<double(double)> slope;  // xi'(s), supported in [-half_support, half_support]
    double half_support = 1.0;
};

/// xi' = A (1 - s^2)^3 on [-1, 1] with A fixing ||xi'||_2 = 1.
PhaseProfile default_phase_profile();

struct ScalingFamilyMember {
    Field1D field;
    double mu = 0.0;
    double epsilon = 0.0;
};

/// rho e^{i theta} with rho = 1 - mu eps xi'(eps x), theta = alpha + sqrt2 mu xi(eps x), mu = n.
/// eps is the smaller positive root of the momentum equation.  For p < 0 the
/// conjugate of the |p| member, rotated back to phase alpha, is returned.
ScalingFamilyMember scaling_family(double p, int n, double alpha = 0.0,
                                   const PhaseProfile& profile = default_phase_profile(),
                                   std::size_t n_points = 20001);

struct VortexPairSpec {
    double R = 2.0;
    double L = 16.0;
    int harmonic_modes = 64;
    int quadrature_nodes = 4096;
};

/// Harmonic extension into D(0, 2) of phi = -arctan(4 cos(t) / 3) on |z| = 2.
class HarmonicCorrection {
public:
    HarmonicCorrection(int modes, int quadrature_nodes);
    double value(double x, double y) const;
    /// (d_x phi, d_y phi)
    std::pair<double, double> gradient(double x, double y) const;
    /// Maximum of |phi| on a polar sampling of the closed disk.
    double sup_norm() const;
    const std::vector<std::complex<double>>& coefficients() const { return coef_; }

private:
    std::vector<std::complex<double>> coef_;  // phi = Re sum coef_m (z/2)^m
};

/// xi(z) = conj(z - i)/|z - i| (z + i)/|z + i| e^{i phi(z)} on |z| < 2.
std::complex<double> unit_vortex_pair(std::complex<double> z, const HarmonicCorrection& phi);

/// Grid with period L, lambda 1, x in [-2R - margin, 2R + margin], spacing close to h.
CylinderGrid vortex_pair_grid(const VortexPairSpec& spec, double h, double margin = 4.0);

/// Periodized, core-regularized vortex pair at half-separation R.
ComplexField2D vortex_pair_field(const VortexPairSpec& spec, const CylinderGrid& grid);

/// Real momentum with theta+- = 0 on the period-L grid.
double vortex_pair_momentum(const VortexPairSpec& spec, const CylinderGrid& grid);

/// Bisection on R in [1, L/4] for P(psi_L) = p L, to |P - pL| < 1e-3 L.
double find_R_for_momentum(double p, double L, double h = 0.25);

/// psi(x, y) = psi_L(x, L y) on the unit torus with lambda = 1/L.
ComplexField2D to_unit_torus(const ComplexField2D& field_on_L);

/// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t);

/// (u_0(x) + (i/n) chi(n x)) e^{2 i pi k theta(n x)}.
Field1D winding_counterexample(int n, int k, const Grid1D& grid = Grid1D::span(-30.0, 30.0, 60001));

}  // namespace gpcyl
