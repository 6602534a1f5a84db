#include "gpcyl/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpcyl/errors.hpp"
#include "gpcyl/soliton1d.hpp"
#include "gpcyl/spectral.hpp"
#include "gpcyl/stencil.hpp"

namespace gpcyl {

namespace {

// <i a, b> = Re(i a conj(b))
inline double ipair(cplx a, cplx b) { return -(a * std::conj(b)).imag(); }

struct Layout {
    std::size_t nx;
    std::size_t ny;
    double dx;
    double dy;
    double period;
    SbpOperator op;
    std::vector<double> w;

    Layout(const Grid1D& g, std::size_t n_y, double period_)
        : nx(g.n), ny(n_y), dx(g.dx), dy(period_ / static_cast<double>(n_y)), period(period_),
          op(g.stencil_order, g.n), w(op.weights(g.dx)) {}
    explicit Layout(const CylinderGrid& g) : Layout(g.x_grid(), g.n_y, g.period_L) {}

    std::vector<cplx> dx_of(const std::vector<cplx>& v) const {
        std::vector<cplx> out(v.size());
        op.apply(v.data(), out.data(), ny, dx);
        return out;
    }
};

double kinetic_x_of(const Layout& l, const std::vector<cplx>& d) {
    double s = 0.0;
    for (std::size_t i = 0; i < l.nx; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < l.ny; ++j) row += std::norm(d[i * l.ny + j]);
        s += l.w[i] * row;
    }
    return 0.5 * l.dy * s;
}

// Wide central stencils annihilate the x-checkerboard, so the x-kinetic energy
// carries (kHyper / 2dx) sum |third undivided difference|^2, an O(dx^4) term.
constexpr double kHyper = 1.0 / 16.0;

inline cplx third_difference(const std::vector<cplx>& v, std::size_t i, std::size_t j, std::size_t ny) {
    return v[(i + 3) * ny + j] - 3.0 * v[(i + 2) * ny + j] + 3.0 * v[(i + 1) * ny + j] - v[i * ny + j];
}

double hyper_of(const Layout& l, const std::vector<cplx>& v) {
    if (l.nx < 4) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i + 3 < l.nx; ++i) {
        for (std::size_t j = 0; j < l.ny; ++j) s += std::norm(third_difference(v, i, j, l.ny));
    }
    return 0.5 * kHyper / l.dx * l.dy * s;
}

// Adds (kHyper / dx) (delta^3)^T delta^3 v, still to be divided by the weights.
void add_hyper_gradient(const Layout& l, const std::vector<cplx>& v, std::vector<cplx>& out) {
    if (l.nx < 4) return;
    const double a = kHyper / l.dx;
    static constexpr double coef[4] = {-1.0, 3.0, -3.0, 1.0};
    for (std::size_t i = 0; i + 3 < l.nx; ++i) {
        for (std::size_t j = 0; j < l.ny; ++j) {
            const cplx t = a * third_difference(v, i, j, l.ny);
            for (std::size_t m = 0; m < 4; ++m) out[(i + m) * l.ny + j] += coef[m] * t;
        }
    }
}

double potential_of(const Layout& l, const std::vector<cplx>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < l.nx; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < l.ny; ++j) {
            const double eta = 1.0 - std::norm(v[i * l.ny + j]);
            row += eta * eta;
        }
        s += l.w[i] * row;
    }
    return 0.25 * l.dy * s;
}

void require_same(const ComplexField2D& a, const ComplexField2D& b) {
    if (!a.grid.same_geometry(b.grid) || a.values.size() != b.values.size()) {
        throw GridMismatch("fields live on different grids");
    }
}

double half_pairing_1d(const Layout& l, const std::vector<cplx>& psi) {
    const auto d = l.op.apply(psi, l.dx);
    double s = 0.0;
    for (std::size_t i = 0; i < l.nx; ++i) s += l.w[i] * ipair(d[i], psi[i]);
    return 0.5 * s;
}

// Squared H_c-type norm pieces of a difference field, plus the eta mismatch.
struct DcParts {
    double grad = 0.0;
    double weighted = 0.0;
    double eta = 0.0;
};

DcParts dc_parts(const Layout& l, const std::vector<cplx>& f1, const std::vector<cplx>& f2,
                 const std::vector<double>& eta_c) {
    std::vector<cplx> diff(f1.size());
    for (std::size_t k = 0; k < f1.size(); ++k) diff[k] = f1[k] - f2[k];
    const auto dxd = l.dx_of(diff);
    std::vector<cplx> dyd;
    if (l.ny > 1) dyd = y_derivative(diff, l.nx, l.ny, l.period);
    DcParts p;
    for (std::size_t i = 0; i < l.nx; ++i) {
        double g = 0.0, h = 0.0, e = 0.0;
        for (std::size_t j = 0; j < l.ny; ++j) {
            const std::size_t k = i * l.ny + j;
            g += std::norm(dxd[k]) + (l.ny > 1 ? std::norm(dyd[k]) : 0.0);
            h += eta_c[i] * std::norm(diff[k]);
            const double de = std::norm(f2[k]) - std::norm(f1[k]);
            e += de * de;
        }
        p.grad += l.w[i] * l.dy * g;
        p.weighted += l.w[i] * l.dy * h;
        p.eta += l.w[i] * l.dy * e;
    }
    return p;
}

std::vector<double> centred_eta(const Grid1D& g, double c) {
    const double mid = g.x_min + 0.5 * g.dx * static_cast<double>(g.n - 1);
    std::vector<double> eta(g.n);
    for (std::size_t i = 0; i < g.n; ++i) eta[i] = soliton_eta(c, g.x(i) - mid);
    return eta;
}

}  // namespace

std::vector<double> x_weights(const CylinderGrid& grid) {
    return SbpOperator(grid.stencil_order, grid.n_x).weights(grid.dx());
}

EnergyBreakdown energy(const ComplexField2D& field) {
    const Layout l(field.grid);
    EnergyBreakdown e;
    e.kinetic_x = kinetic_x_of(l, l.dx_of(field.values)) + hyper_of(l, field.values);

    std::vector<cplx> hat = field.values;
    fft_rows_forward(hat.data(), l.nx, l.ny);
    double ky = 0.0;
    for (std::size_t i = 0; i < l.nx; ++i) {
        double row = 0.0;
        for (std::size_t k = 0; k < l.ny; ++k) {
            row += y_wavenumber_squared(k, l.ny, l.period) * std::norm(hat[i * l.ny + k]);
        }
        ky += l.w[i] * row;
    }
    const double lam = field.grid.lambda;
    e.kinetic_y = 0.5 * lam * lam * l.dy * ky / static_cast<double>(l.ny);
    e.potential = potential_of(l, field.values);
    e.total = e.kinetic_x + e.kinetic_y + e.potential;
    return e;
}

double energy_1d(const std::vector<cplx>& psi, const Grid1D& grid) {
    if (psi.size() != grid.n) throw GridMismatch("energy_1d: length differs from grid");
    const Layout l(grid, 1, 1.0);
    return kinetic_x_of(l, l.dx_of(psi)) + hyper_of(l, psi) + potential_of(l, psi);
}

double energy_1d(const Field1D& field) { return energy_1d(field.values, field.grid); }

MomentumReport momentum(const ComplexField2D& field, PhaseMode mode) {
    const Layout l(field.grid);
    const auto split = zero_mode_split(field);
    const auto bp = boundary_phases(split.psi0, field.tail_width, mode);
    const double jump = 0.5 * (bp.theta_plus - bp.theta_minus);

    const Layout l1(field.grid.x_grid(), 1, 1.0);
    const double p0 = half_pairing_1d(l1, split.psi0) + jump;

    const auto dw = l.dx_of(split.w0);
    double pw = 0.0;
    for (std::size_t i = 0; i < l.nx; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < l.ny; ++j) row += ipair(dw[i * l.ny + j], split.w0[i * l.ny + j]);
        pw += l.w[i] * row;
    }
    pw *= 0.5 * l.dy;

    MomentumReport r;
    r.period = l.period;
    r.p_theta = l.period * p0 + pw;
    r.p_untwisted = reduce_momentum(r.p_theta, kPi * l.period);
    r.theta_minus = bp.theta_minus;
    r.theta_plus = bp.theta_plus;
    r.lifted = bp.lifted;

    const auto dpsi = l.dx_of(field.values);
    r.slice_values.assign(l.ny, 0.0);
    for (std::size_t i = 0; i < l.nx; ++i) {
        for (std::size_t j = 0; j < l.ny; ++j) {
            r.slice_values[j] += l.w[i] * ipair(dpsi[i * l.ny + j], field.values[i * l.ny + j]);
        }
    }
    double mean = 0.0;
    for (auto& p : r.slice_values) {
        p = 0.5 * p + jump;
        mean += p;
    }
    mean /= static_cast<double>(l.ny);
    for (double p : r.slice_values) r.slice_oscillation = std::max(r.slice_oscillation, std::abs(p - mean));
    return r;
}

Momentum1D momentum_1d(const Field1D& field, PhaseMode mode) {
    const Layout l(field.grid, 1, 1.0);
    const auto bp = boundary_phases(field.values, field.tail_width, mode);
    Momentum1D m;
    m.p_theta = half_pairing_1d(l, field.values) + 0.5 * (bp.theta_plus - bp.theta_minus);
    m.p_untwisted = reduce_momentum(m.p_theta);
    m.lifted = bp.lifted;
    return m;
}

std::vector<double> slice_momentum_derivative(const ComplexField2D& field) {
    const Layout l(field.grid);
    const auto dxp = l.dx_of(field.values);
    const auto dyp = y_derivative(field.values, l.nx, l.ny, l.period);
    std::vector<double> out(l.ny, 0.0);
    for (std::size_t i = 0; i < l.nx; ++i) {
        for (std::size_t j = 0; j < l.ny; ++j) {
            out[j] += l.w[i] * ipair(dxp[i * l.ny + j], dyp[i * l.ny + j]);
        }
    }
    return out;
}

double slice_oscillation_bound(const ComplexField2D& field) {
    const auto d = slice_momentum_derivative(field);
    double s = 0.0;
    for (double v : d) s += std::abs(v);
    return s * field.grid.dy();
}

ComplexField2D grad_energy(const ComplexField2D& field) {
    const Layout l(field.grid);
    auto d = l.dx_of(field.values);
    for (std::size_t i = 0; i < l.nx; ++i) {
        for (std::size_t j = 0; j < l.ny; ++j) d[i * l.ny + j] *= l.w[i];
    }
    ComplexField2D g = field;
    l.op.apply_transpose(d.data(), g.values.data(), l.ny, l.dx);
    add_hyper_gradient(l, field.values, g.values);
    const auto lap = y_laplacian_negative(field.values, l.nx, l.ny, l.period);
    const double lam2 = field.grid.lambda * field.grid.lambda;
    for (std::size_t i = 0; i < l.nx; ++i) {
        const double inv_w = 1.0 / l.w[i];
        for (std::size_t j = 0; j < l.ny; ++j) {
            const std::size_t k = i * l.ny + j;
            const cplx psi = field.values[k];
            g.values[k] = g.values[k] * inv_w + lam2 * lap[k] - (1.0 - std::norm(psi)) * psi;
        }
    }
    return g;
}

ComplexField2D grad_momentum(const ComplexField2D& field) {
    const Layout l(field.grid);
    const cplx I(0.0, 1.0);
    const auto d = l.dx_of(field.values);
    std::vector<cplx> weighted(field.values.size());
    for (std::size_t i = 0; i < l.nx; ++i) {
        for (std::size_t j = 0; j < l.ny; ++j) {
            weighted[i * l.ny + j] = -I * l.w[i] * field.values[i * l.ny + j];
        }
    }
    std::vector<cplx> t(field.values.size());
    l.op.apply_transpose(weighted.data(), t.data(), l.ny, l.dx);
    ComplexField2D m = field;
    for (std::size_t i = 0; i < l.nx; ++i) {
        const double inv_w = 1.0 / l.w[i];
        for (std::size_t j = 0; j < l.ny; ++j) {
            const std::size_t k = i * l.ny + j;
            m.values[k] = 0.5 * (I * d[k] + t[k] * inv_w);
        }
    }
    // derivative of the boundary term (L/2)(theta+ - theta-) through psi0 at the edge columns
    const auto psi0 = zero_mode_split(field).psi0;
    auto edge = [&](std::size_t i, double sign) {
        const double r2 = std::norm(psi0[i]);
        if (r2 == 0.0) return;
        const cplx add = sign * I * psi0[i] / (2.0 * l.w[i] * r2);
        for (std::size_t j = 0; j < l.ny; ++j) m.values[i * l.ny + j] += add;
    };
    edge(l.nx - 1, 1.0);
    edge(0, -1.0);
    return m;
}

double inner(const ComplexField2D& a, const ComplexField2D& b) {
    require_same(a, b);
    const auto w = x_weights(a.grid);
    const std::size_t ny = a.grid.n_y;
    double s = 0.0;
    for (std::size_t i = 0; i < a.grid.n_x; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < ny; ++j) {
            const std::size_t k = i * ny + j;
            row += (a.values[k] * std::conj(b.values[k])).real();
        }
        s += w[i] * row;
    }
    return s * a.grid.dy();
}

double norm(const ComplexField2D& a) { return std::sqrt(std::max(0.0, inner(a, a))); }

double distance_dc(const ComplexField2D& f1, const ComplexField2D& f2, double c) {
    require_same(f1, f2);
    const Layout l(f1.grid);
    const auto p = dc_parts(l, f1.values, f2.values, centred_eta(f1.grid.x_grid(), c));
    return std::sqrt(p.grad + p.weighted + p.eta);
}

double distance_dc_1d(const Field1D& f1, const Field1D& f2, double c) {
    if (f1.values.size() != f2.values.size() || f1.grid.n != f2.grid.n || f1.grid.dx != f2.grid.dx) {
        throw GridMismatch("distance_dc_1d: fields live on different grids");
    }
    const Layout l(f1.grid, 1, 1.0);
    const auto p = dc_parts(l, f1.values, f2.values, centred_eta(f1.grid, c));
    return std::sqrt(p.grad + p.weighted + p.eta);
}

Registration distance_dc_registered(const ComplexField2D& f1, const ComplexField2D& f2, double c,
                                    long max_shift) {
    require_same(f1, f2);
    const Layout l(f1.grid);
    const auto eta_c = centred_eta(f1.grid.x_grid(), c);
    const long nx = static_cast<long>(l.nx);
    const auto d2 = l.dx_of(f2.values);
    const auto y2 = y_derivative(f2.values, l.nx, l.ny, l.period);

    Registration best;
    best.distance = std::numeric_limits<double>::infinity();
    std::vector<cplx> moved(f1.values.size());
    for (long s = -max_shift; s <= max_shift; ++s) {
        for (long i = 0; i < nx; ++i) {
            const long src = std::clamp(i - s, 0L, nx - 1);
            std::copy_n(f1.values.begin() + src * static_cast<long>(l.ny), l.ny,
                        moved.begin() + i * static_cast<long>(l.ny));
        }
        // best rotation maximizes Re(e^{i a} <moved, f2>_{H_c})
        const auto d1 = l.dx_of(moved);
        const auto y1 = y_derivative(moved, l.nx, l.ny, l.period);
        cplx z{};
        for (std::size_t i = 0; i < l.nx; ++i) {
            cplx row{};
            for (std::size_t j = 0; j < l.ny; ++j) {
                const std::size_t k = i * l.ny + j;
                row += d1[k] * std::conj(d2[k]) + y1[k] * std::conj(y2[k]) +
                       eta_c[i] * moved[k] * std::conj(f2.values[k]);
            }
            z += l.w[i] * row;
        }
        const double alpha = std::abs(z) > 0.0 ? -std::arg(z) : 0.0;
        const cplx rot = std::polar(1.0, alpha);
        for (auto& v : moved) v *= rot;
        const auto p = dc_parts(l, moved, f2.values, eta_c);
        const double dist = std::sqrt(p.grad + p.weighted + p.eta);
        if (dist < best.distance) best = {dist, s, alpha};
    }
    return best;
}

}  // namespace gpcyl
