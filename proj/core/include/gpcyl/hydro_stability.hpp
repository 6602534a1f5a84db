#pragma once

/// Energy and momentum in hydrodynamic variables (eta, v) and their expansion
/// around the soliton pair (eta_c, v_c):
///   E((eta_c, v_c) + eps) = E + dE(eps) + 1/2 d2E(eps, eps) + R_c(eps),
///   P((eta_c, v_c) + eps) = P + dP(eps) + 1/2 d2P(eps, eps).
/// eta' is always the SBP derivative of the grid, so the expansion closes to round-off.

#include <cstdint>
#include <vector>

#include "gpcyl/grid1d.hpp"

namespace gpcyl {

/// 1/8 int eta'^2/(1-eta) + 1/2 int (1-eta) v^2 + 1/4 int eta^2.
double hydro_energy(const HydroPair& pair);
/// 1/2 int eta v.
double hydro_momentum(const HydroPair& pair);

/// Expansion of E and P around the soliton of speed c on a fixed grid.
class SolitonExpansion {
public:
    SolitonExpansion(double c, const Grid1D& grid);

    double speed() const { return c_; }
    const Grid1D& grid() const { return grid_; }
    const HydroPair& base() const { return base_; }
    /// SBP derivatives of eta_c and v_c.
    const std::vector<double>& eta_prime() const { return eta_p_; }
    const std::vector<double>& v_prime() const { return v_p_; }

    double dE(const HydroPerturbation& eps) const;
    double dP(const HydroPerturbation& eps) const;
    double d2E(const HydroPerturbation& eps) const;
    double d2P(const HydroPerturbation& eps) const;
    /// Throws DomainError unless 1 - eta_c - eps_eta > 0 everywhere.
    double remainder(const HydroPerturbation& eps) const;

    /// Removes the components along (eta_c', v_c') and then along the Riesz
    /// representative (v_c/2, eta_c/2) of dP, Gram-Schmidt in L2 x L2.
    HydroPerturbation project_orthogonal(const HydroPerturbation& eps) const;
    /// L2 x L2 pairing with (eta_c', v_c').
    double translation_pairing(const HydroPerturbation& eps) const;

    /// int (eps_eta'^2 + eps_eta^2 + eps_v^2).
    double norm_squared(const HydroPerturbation& eps) const;
    HydroPair perturbed(const HydroPerturbation& eps) const;

private:
    void check(const HydroPerturbation& eps) const;
    std::vector<double> derivative(const std::vector<double>& f) const;

    double c_;
    Grid1D grid_;
    HydroPair base_;
    std::vector<double> eta_p_;
    std::vector<double> v_p_;
    std::vector<double> w_;
};

double dE_hydro(double c, const Grid1D& grid, const HydroPerturbation& eps);
double dP_hydro(double c, const Grid1D& grid, const HydroPerturbation& eps);
double d2E_hydro(double c, const Grid1D& grid, const HydroPerturbation& eps);
double d2P_hydro(double c, const Grid1D& grid, const HydroPerturbation& eps);
double remainder_R(double c, const Grid1D& grid, const HydroPerturbation& eps);
HydroPerturbation project_orthogonal(double c, const Grid1D& grid, const HydroPerturbation& eps);

/// Smooth compactly supported random perturbation: a sum of a few C^2 bumps
/// centred in [-support, support], each component scaled to max |.| = amplitude.
HydroPerturbation smooth_random_perturbation(const Grid1D& grid, std::uint64_t seed,
                                             double amplitude, double support = 8.0);

struct CoercivityReport {
    double speed = 0.0;
    int samples = 0;
    int failures = 0;
    /// min over samples of (d2E - c d2P) / ||eps||^2.
    double min_ratio = 0.0;
};

/// Positivity of d2E - c d2P on random projected perturbations.
CoercivityReport coercivity_probe(double c, const Grid1D& grid, int samples, std::uint64_t seed);

}  // namespace gpcyl
