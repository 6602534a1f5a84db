#include "gpcyl/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gpcyl/errors.hpp"
#include "gpcyl/soliton1d.hpp"
#include "gpcyl/spectral.hpp"
#include "gpcyl/stencil.hpp"

namespace gpcyl {

namespace {

// Solves (H + S + lambda^2 kappa^2 H) u = H r mode by mode in y, where H is the
// x quadrature and S the compact stiffness matrix.  Self-adjoint and positive in
// the weighted inner product, spectrally close to the Hessian of the kinetic part.
class Preconditioner {
public:
    explicit Preconditioner(const CylinderGrid& g)
        : nx_(g.n_x), ny_(g.n_y), w_(x_weights(g)), dx_(g.dx()), kappa2_(g.n_y) {
        const double lam2 = g.lambda * g.lambda;
        for (std::size_t k = 0; k < ny_; ++k) {
            const double kap = y_wavenumber(k, ny_, g.period_L);
            kappa2_[k] = lam2 * kap * kap;
        }
        // y_wavenumber reports 0 at Nyquist, but -d_yy does not
        const double kn = 2.0 * kPi * (static_cast<double>(ny_) / 2.0) / g.period_L;
        kappa2_[ny_ / 2] = lam2 * kn * kn;
    }

    std::vector<cplx> apply(const std::vector<cplx>& r) const {
        std::vector<cplx> u = r;
        fft_rows_forward(u.data(), nx_, ny_);
        std::vector<double> cp(nx_);
        std::vector<cplx> dp(nx_);
        const double s = 1.0 / dx_;
        for (std::size_t k = 0; k < ny_; ++k) {
            // Thomas algorithm on the tridiagonal system along x
            for (std::size_t i = 0; i < nx_; ++i) {
                const double off = -s;
                const double stiff = (i == 0 || i + 1 == nx_) ? s : 2.0 * s;
                const double diag = w_[i] * (1.0 + kappa2_[k]) + stiff;
                const cplx rhs = w_[i] * u[i * ny_ + k];
                if (i == 0) {
                    cp[i] = off / diag;
                    dp[i] = rhs / diag;
                } else {
                    const double m = diag - off * cp[i - 1];
                    cp[i] = off / m;
                    dp[i] = (rhs - off * dp[i - 1]) / m;
                }
            }
            for (std::size_t i = nx_; i-- > 0;) {
                u[i * ny_ + k] = (i + 1 == nx_) ? dp[i] : dp[i] - cp[i] * u[(i + 1) * ny_ + k];
            }
        }
        fft_rows_backward(u.data(), nx_, ny_);
        const double inv = 1.0 / static_cast<double>(ny_);
        for (auto& z : u) z *= inv;
        return u;
    }

private:
    std::size_t nx_, ny_;
    std::vector<double> w_;
    double dx_;
    std::vector<double> kappa2_;
};

double raw_inner(const CylinderGrid& g, const std::vector<double>& w, const std::vector<cplx>& a,
                 const std::vector<cplx>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.n_x; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < g.n_y; ++j) {
            const std::size_t k = i * g.n_y + j;
            row += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
        }
        s += w[i] * row;
    }
    return s * g.dy();
}

bool admissible(const ComplexField2D& f) {
    return tails_admissible(zero_mode_split(f).psi0, f.tail_width);
}

// Newton steps along K M until the class drift is below tol; false if the field left
// the admissible set.  The smoothed direction keeps the edge spike of M out of the field.
bool correct_momentum(ComplexField2D& f, double target, double period, double tol) {
    const Preconditioner K(f.grid);
    const auto w = x_weights(f.grid);
    for (int k = 0; k < 8; ++k) {
        if (!admissible(f)) return false;
        const double drift = reduce_momentum(momentum(f).p_theta - target, period);
        if (std::abs(drift) <= tol) return true;
        const auto M = grad_momentum(f);
        const auto KM = K.apply(M.values);
        const double mk = raw_inner(f.grid, w, M.values, KM);
        if (!(mk > 0.0)) return false;
        const double s = -drift / mk;
        for (std::size_t q = 0; q < f.values.size(); ++q) f.values[q] += s * KM[q];
        flatten_tails(f);
    }
    if (!admissible(f)) return false;
    return std::abs(reduce_momentum(momentum(f).p_theta - target, period)) <= tol;
}

}  // namespace

void MinimizeOptions::validate() const {
    if (max_iters < 0) throw std::invalid_argument("MinimizeOptions: max_iters must be >= 0");
    if (!(step_init > 0.0)) throw std::invalid_argument("MinimizeOptions: step_init must be positive");
    if (!(grad_tol > 0.0) || !(momentum_tol > 0.0)) {
        throw std::invalid_argument("MinimizeOptions: tolerances must be positive");
    }
    if (pohozaev_every < 0) throw std::invalid_argument("MinimizeOptions: pohozaev_every must be >= 0");
    if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
        throw std::invalid_argument("MinimizeOptions: backtrack_factor must lie in (0, 1)");
    }
}

void flatten_tails(ComplexField2D& f) {
    const std::size_t nx = f.grid.n_x;
    const std::size_t ny = f.grid.n_y;
    const std::size_t t = std::min(f.tail_width, nx / 2);
    auto flatten = [&](std::size_t i) {
        cplx mean{};
        for (std::size_t j = 0; j < ny; ++j) mean += f.values[i * ny + j];
        mean /= static_cast<double>(ny);
        for (std::size_t j = 0; j < ny; ++j) f.values[i * ny + j] = mean;
    };
    for (std::size_t k = 0; k < t; ++k) {
        flatten(k);
        flatten(nx - 1 - k);
    }
}

double pohozaev_residual(const ComplexField2D& field) {
    const auto e = energy(field);
    const double A = e.kinetic_x;
    const double B = e.kinetic_y + e.potential;
    return (A + B) > 0.0 ? std::abs(A - B) / (A + B) : 0.0;
}

std::pair<ComplexField2D, double> pohozaev_rescale(const ComplexField2D& field) {
    const auto e = energy(field);
    const double A = e.kinetic_x;
    const double B = e.kinetic_y + e.potential;
    if (!(A > 0.0)) throw DegenerateField("pohozaev_rescale: the x-kinetic energy vanishes");
    const double tau = std::sqrt(B / A);
    ComplexField2D out = field;
    out.grid.x_min = field.grid.x_min / tau;
    out.grid.x_max = field.grid.x_max / tau;
    return {std::move(out), tau};
}

double estimate_speed(const ComplexField2D& field) {
    const auto G = grad_energy(field);
    const auto M = grad_momentum(field);
    const double mm = inner(M, M);
    const double area = (field.grid.x_max - field.grid.x_min) * field.grid.period_L;
    if (!(mm > 1e-24 * area)) throw DegenerateField("estimate_speed: momentum gradient vanishes");
    return inner(G, M) / mm;
}

namespace {

// Minimizer of the quadratic through phi'(0) = s0 and phi'(tau) along -d, where
// phi(t) = E(psi - t d).  Falls back to tau when the curvature is not positive.
double secant_step(const ComplexField2D& psi, const std::vector<cplx>& d, double tau, double s0,
                   const std::vector<double>& w) {
    ComplexField2D probe = psi;
    for (std::size_t q = 0; q < d.size(); ++q) probe.values[q] -= tau * d[q];
    const double s1 = raw_inner(psi.grid, w, grad_energy(probe).values, d);
    return s0 - s1 > 0.0 ? tau * s0 / (s0 - s1) : tau;
}

// psi(tau x) resampled on the same nodes by 4-point Lagrange interpolation;
// nodes that map outside the interval take the edge column.
ComplexField2D dilate_on_grid(const ComplexField2D& f, double tau) {
    const auto& g = f.grid;
    const double dx = g.dx();
    ComplexField2D out = f;
    const long last = static_cast<long>(g.n_x) - 1;
    for (std::size_t i = 0; i < g.n_x; ++i) {
        const double s = (tau * g.x(i) - g.x_min) / dx;
        if (s <= 0.0 || s >= static_cast<double>(last)) {
            const std::size_t edge = s <= 0.0 ? 0 : g.n_x - 1;
            for (std::size_t j = 0; j < g.n_y; ++j) out.at(i, j) = f.at(edge, j);
            continue;
        }
        const long k = std::clamp(static_cast<long>(std::floor(s)) - 1, 0L, last - 3);
        const double t = s - static_cast<double>(k);
        const double l0 = -(t - 1) * (t - 2) * (t - 3) / 6.0;
        const double l1 = t * (t - 2) * (t - 3) / 2.0;
        const double l2 = -t * (t - 1) * (t - 3) / 2.0;
        const double l3 = t * (t - 1) * (t - 2) / 6.0;
        const auto kk = static_cast<std::size_t>(k);
        for (std::size_t j = 0; j < g.n_y; ++j) {
            out.at(i, j) = l0 * f.at(kk, j) + l1 * f.at(kk + 1, j) + l2 * f.at(kk + 2, j) + l3 * f.at(kk + 3, j);
        }
    }
    return out;
}

}  // namespace

MinimizeResult minimize(const ComplexField2D& initial, double target_p, const MinimizeOptions& opts) {
    opts.validate();
    initial.grid.validate();
    const double period = kPi * initial.grid.period_L;
    const double target = reduce_momentum(target_p, period);

    ComplexField2D psi = initial;
    flatten_tails(psi);
    if (!admissible(psi)) throw LiftError("minimize: initial field has no liftable tails", 0);
    if (std::abs(reduce_momentum(momentum(psi).p_theta - target, period)) > period / 4.0) {
        throw std::invalid_argument("minimize: initial momentum class is not within pi/4 of the target");
    }
    if (!correct_momentum(psi, target, period, 0.1 * opts.momentum_tol)) {
        throw LiftError("minimize: momentum correction left the admissible set", 0);
    }

    MinimizeResult res;
    double E = energy(psi).total;
    double step = opts.step_init;
    double grad_norm = 0.0;
    double drift = 0.0;
    int it = 0;
    res.status = "max_iters";

    for (;; ++it) {
        const auto G = grad_energy(psi);
        const auto M = grad_momentum(psi);
        const double mm = inner(M, M);
        const double c_l2 = mm > 0.0 ? inner(G, M) / mm : 0.0;
        ComplexField2D r = G;
        for (std::size_t q = 0; q < r.values.size(); ++q) r.values[q] -= c_l2 * M.values[q];
        grad_norm = norm(r);
        const auto mom = momentum(psi);
        drift = reduce_momentum(mom.p_theta - target, period);
        res.history.push_back({it, E, mom.p_untwisted, grad_norm});

        if (grad_norm <= opts.grad_tol && std::abs(drift) <= opts.momentum_tol) {
            res.converged = true;
            res.status = "converged";
            break;
        }
        if (it >= opts.max_iters) break;

        std::vector<cplx> d;
        double slope;
        if (opts.precondition) {
            const Preconditioner K(psi.grid);
            const auto w = x_weights(psi.grid);
            const auto KG = K.apply(G.values);
            const auto KM = K.apply(M.values);
            const double c = raw_inner(psi.grid, w, G.values, KM) / raw_inner(psi.grid, w, M.values, KM);
            d.resize(KG.size());
            for (std::size_t q = 0; q < d.size(); ++q) d[q] = KG[q] - c * KM[q];
            slope = raw_inner(psi.grid, w, G.values, d);
        } else {
            d = r.values;
            slope = grad_norm * grad_norm;
        }

        // E - c [P - target]: the residual drift allowed by momentum_tol moves E by c times
        // itself, which late in the flow exceeds the decrease a step can buy
        auto merit = [&](const ComplexField2D& f, double Ef) {
            return Ef - c_l2 * reduce_momentum(momentum(f).p_theta - target, period);
        };
        const double merit0 = E - c_l2 * drift;
        bool accepted = false;
        double tau = step;
        while (tau >= opts.min_step) {
            ComplexField2D trial = psi;
            for (std::size_t q = 0; q < d.size(); ++q) trial.values[q] -= tau * d[q];
            flatten_tails(trial);
            if (correct_momentum(trial, target, period, 0.1 * opts.momentum_tol)) {
                const double Et = energy(trial).total;
                bool ok = merit(trial, Et) <= merit0 - opts.armijo * tau * slope;
                // Once the predicted decrease is below rounding in E, energy values cannot
                // rank trials; a secant on the directional derivative still can.
                const double noise = 1e-13 * std::max(1.0, std::abs(E));
                if (!ok && tau * slope <= noise) {
                    const double t_star = secant_step(psi, d, tau, slope, x_weights(psi.grid));
                    trial = psi;
                    for (std::size_t q = 0; q < d.size(); ++q) trial.values[q] -= t_star * d[q];
                    flatten_tails(trial);
                    if (correct_momentum(trial, target, period, 0.1 * opts.momentum_tol)) {
                        const double Es = energy(trial).total;
                        if (merit(trial, Es) <= merit0 + noise) {
                            psi = std::move(trial);
                            E = Es;
                            accepted = true;
                            tau = t_star;
                            break;
                        }
                    }
                }
                if (ok) {
                    psi = std::move(trial);
                    E = Et;
                    accepted = true;
                    break;
                }
            }
            tau *= opts.backtrack_factor;
        }
        if (!accepted) {
            res.status = "stalled";
            break;
        }
        step = std::min(opts.max_step, tau / opts.backtrack_factor);

        if (opts.pohozaev_every > 0 && (it + 1) % opts.pohozaev_every == 0) {
            const auto eb = energy(psi);
            const double A = eb.kinetic_x;
            const double B = eb.kinetic_y + eb.potential;
            // the grid is kept fixed so that iterates stay comparable across runs
            ComplexField2D scaled = A > 0.0 && B > 0.0 ? dilate_on_grid(psi, std::sqrt(B / A)) : psi;
            flatten_tails(scaled);
            double Es = std::numeric_limits<double>::infinity();
            if (correct_momentum(scaled, target, period, 0.1 * opts.momentum_tol)) Es = energy(scaled).total;
            // only a decrease well above rounding justifies the interpolation error
            if (Es < E - 1e-12 * std::max(1.0, std::abs(E))) {
                psi = std::move(scaled);
                E = Es;
            }
        }
    }

    res.field = psi;
    res.energy = energy(psi);
    res.momentum = momentum(psi);
    res.iterations = it;
    res.grad_norm = grad_norm;
    res.pohozaev_residual = pohozaev_residual(psi);
    try {
        res.speed_estimate = estimate_speed(psi);
    } catch (const DegenerateField&) {
        res.speed_estimate = 0.0;
    }
    return res;
}

}  // namespace gpcyl
