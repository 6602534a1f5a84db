#include "gpcyl/hydro_stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gpcyl/errors.hpp"
#include "gpcyl/soliton1d.hpp"
#include "gpcyl/stencil.hpp"

namespace gpcyl {

namespace {

std::vector<double> sbp_derivative(const Grid1D& g, const std::vector<double>& f) {
    return SbpOperator(g.stencil_order, g.n).apply(f, g.dx);
}

std::vector<double> sbp_weights(const Grid1D& g) {
    return SbpOperator(g.stencil_order, g.n).weights(g.dx);
}

double dot(const std::vector<double>& w, const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * a[i] * b[i];
    return s;
}

// C^2 bump (1 - s^2)^3 on [-1, 1]
double bump(double s) {
    const double t = 1.0 - s * s;
    return t > 0.0 ? t * t * t : 0.0;
}

}  // namespace

double hydro_energy(const HydroPair& pair) {
    const auto& g = pair.grid;
    if (pair.eta.size() != g.n || pair.v.size() != g.n) throw GridMismatch("hydro_energy: size mismatch");
    for (double e : pair.eta) {
        if (!(1.0 - e > 0.0)) throw DomainError("hydro_energy: requires eta < 1");
    }
    const auto d = sbp_derivative(g, pair.eta);
    const auto w = sbp_weights(g);
    double s = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
        const double a = 1.0 - pair.eta[i];
        s += w[i] * (d[i] * d[i] / (8.0 * a) + 0.5 * a * pair.v[i] * pair.v[i] +
                     0.25 * pair.eta[i] * pair.eta[i]);
    }
    return s;
}

double hydro_momentum(const HydroPair& pair) {
    const auto w = sbp_weights(pair.grid);
    return 0.5 * dot(w, pair.eta, pair.v);
}

SolitonExpansion::SolitonExpansion(double c, const Grid1D& grid)
    : c_(c), grid_(grid), base_(soliton_hydro(c, grid)) {
    eta_p_ = derivative(base_.eta);
    v_p_ = derivative(base_.v);
    w_ = sbp_weights(grid_);
}

std::vector<double> SolitonExpansion::derivative(const std::vector<double>& f) const {
    return sbp_derivative(grid_, f);
}

void SolitonExpansion::check(const HydroPerturbation& eps) const {
    if (eps.eps_eta.size() != grid_.n || eps.eps_v.size() != grid_.n) {
        throw GridMismatch("hydro perturbation does not match the grid");
    }
}

double SolitonExpansion::dE(const HydroPerturbation& eps) const {
    check(eps);
    const auto de = derivative(eps.eps_eta);
    double s = 0.0;
    for (std::size_t i = 0; i < grid_.n; ++i) {
        const double a = 1.0 - base_.eta[i];
        const double h = eta_p_[i];
        const double v = base_.v[i];
        const double e = eps.eps_eta[i];
        s += w_[i] * (h * h * e / (4.0 * a * a) + h * de[i] / (2.0 * a) - v * v * e +
                      2.0 * a * v * eps.eps_v[i] + base_.eta[i] * e);
    }
    return 0.5 * s;
}

double SolitonExpansion::dP(const HydroPerturbation& eps) const {
    check(eps);
    double s = 0.0;
    for (std::size_t i = 0; i < grid_.n; ++i) {
        s += w_[i] * (base_.eta[i] * eps.eps_v[i] + base_.v[i] * eps.eps_eta[i]);
    }
    return 0.5 * s;
}

double SolitonExpansion::d2E(const HydroPerturbation& eps) const {
    check(eps);
    const auto de = derivative(eps.eps_eta);
    double s = 0.0;
    for (std::size_t i = 0; i < grid_.n; ++i) {
        const double a = 1.0 - base_.eta[i];
        const double h = eta_p_[i];
        const double e = eps.eps_eta[i];
        const double f = eps.eps_v[i];
        s += w_[i] * (de[i] * de[i] / (4.0 * a) + h * e * de[i] / (2.0 * a * a) +
                      h * h * e * e / (4.0 * a * a * a) - 2.0 * base_.v[i] * e * f + a * f * f +
                      0.5 * e * e);
    }
    return s;
}

double SolitonExpansion::d2P(const HydroPerturbation& eps) const {
    check(eps);
    return dot(w_, eps.eps_eta, eps.eps_v);
}

double SolitonExpansion::remainder(const HydroPerturbation& eps) const {
    check(eps);
    const auto de = derivative(eps.eps_eta);
    double s = 0.0;
    for (std::size_t i = 0; i < grid_.n; ++i) {
        const double a = 1.0 - base_.eta[i];
        const double e = eps.eps_eta[i];
        const double b = a - e;
        if (!(b > 0.0)) throw DomainError("remainder_R: 1 - eta_c - eps_eta must stay positive");
        const double h = eta_p_[i];
        const double f = eps.eps_v[i];
        s += w_[i] * (de[i] * de[i] * e / (4.0 * a * b) + h * e * e * de[i] / (2.0 * a * a * b) +
                      h * h * e * e * e / (4.0 * a * a * a * b) - e * f * f);
    }
    return 0.5 * s;
}

double SolitonExpansion::translation_pairing(const HydroPerturbation& eps) const {
    check(eps);
    return dot(w_, eps.eps_eta, eta_p_) + dot(w_, eps.eps_v, v_p_);
}

HydroPerturbation SolitonExpansion::project_orthogonal(const HydroPerturbation& eps) const {
    check(eps);
    auto pair = [&](const HydroPerturbation& a, const HydroPerturbation& b) {
        return dot(w_, a.eps_eta, b.eps_eta) + dot(w_, a.eps_v, b.eps_v);
    };
    auto axpy = [](HydroPerturbation& y, double a, const HydroPerturbation& x) {
        for (std::size_t i = 0; i < y.eps_eta.size(); ++i) {
            y.eps_eta[i] += a * x.eps_eta[i];
            y.eps_v[i] += a * x.eps_v[i];
        }
    };
    const HydroPerturbation u1{eta_p_, v_p_};
    HydroPerturbation u2{base_.v, base_.eta};
    for (auto& x : u2.eps_eta) x *= 0.5;
    for (auto& x : u2.eps_v) x *= 0.5;

    const double n1 = pair(u1, u1);
    axpy(u2, -pair(u2, u1) / n1, u1);
    const double n2 = pair(u2, u2);

    HydroPerturbation out = eps;
    axpy(out, -pair(out, u1) / n1, u1);
    axpy(out, -pair(out, u2) / n2, u2);
    // one more sweep removes the rounding left by the first pass
    axpy(out, -pair(out, u1) / n1, u1);
    axpy(out, -pair(out, u2) / n2, u2);
    return out;
}

double SolitonExpansion::norm_squared(const HydroPerturbation& eps) const {
    check(eps);
    const auto de = derivative(eps.eps_eta);
    return dot(w_, de, de) + dot(w_, eps.eps_eta, eps.eps_eta) + dot(w_, eps.eps_v, eps.eps_v);
}

HydroPair SolitonExpansion::perturbed(const HydroPerturbation& eps) const {
    check(eps);
    HydroPair p = base_;
    for (std::size_t i = 0; i < grid_.n; ++i) {
        p.eta[i] += eps.eps_eta[i];
        p.v[i] += eps.eps_v[i];
    }
    return p;
}

double dE_hydro(double c, const Grid1D& grid, const HydroPerturbation& eps) {
    return SolitonExpansion(c, grid).dE(eps);
}
double dP_hydro(double c, const Grid1D& grid, const HydroPerturbation& eps) {
    return SolitonExpansion(c, grid).dP(eps);
}
double d2E_hydro(double c, const Grid1D& grid, const HydroPerturbation& eps) {
    return SolitonExpansion(c, grid).d2E(eps);
}
double d2P_hydro(double c, const Grid1D& grid, const HydroPerturbation& eps) {
    return SolitonExpansion(c, grid).d2P(eps);
}
double remainder_R(double c, const Grid1D& grid, const HydroPerturbation& eps) {
    return SolitonExpansion(c, grid).remainder(eps);
}
HydroPerturbation project_orthogonal(double c, const Grid1D& grid, const HydroPerturbation& eps) {
    return SolitonExpansion(c, grid).project_orthogonal(eps);
}

HydroPerturbation smooth_random_perturbation(const Grid1D& grid, std::uint64_t seed, double amplitude,
                                             double support) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> centre(-support, support);
    std::uniform_real_distribution<double> width(0.8, 3.0);
    std::uniform_real_distribution<double> weight(-1.0, 1.0);
    HydroPerturbation eps{std::vector<double>(grid.n, 0.0), std::vector<double>(grid.n, 0.0)};
    for (auto* comp : {&eps.eps_eta, &eps.eps_v}) {
        const int bumps = 4;
        for (int b = 0; b < bumps; ++b) {
            const double x0 = centre(rng);
            const double r = width(rng);
            const double a = weight(rng);
            for (std::size_t i = 0; i < grid.n; ++i) (*comp)[i] += a * bump((grid.x(i) - x0) / r);
        }
        double peak = 0.0;
        for (double v : *comp) peak = std::max(peak, std::abs(v));
        if (peak > 0.0) {
            for (double& v : *comp) v *= amplitude / peak;
        }
    }
    return eps;
}

CoercivityReport coercivity_probe(double c, const Grid1D& grid, int samples, std::uint64_t seed) {
    const SolitonExpansion ex(c, grid);
    CoercivityReport rep;
    rep.speed = c;
    rep.samples = samples;
    rep.min_ratio = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        const auto eps = ex.project_orthogonal(
            smooth_random_perturbation(grid, seed + static_cast<std::uint64_t>(s) * 7919u, 0.1));
        const double q = ex.d2E(eps) - c * ex.d2P(eps);
        const double n2 = ex.norm_squared(eps);
        if (!(q > 0.0)) ++rep.failures;
        if (n2 > 0.0) rep.min_ratio = std::min(rep.min_ratio, q / n2);
    }
    return rep;
}

}  // namespace gpcyl
