#include "gpcyl/testfields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpcyl/errors.hpp"
#include "gpcyl/functionals.hpp"
#include "gpcyl/soliton1d.hpp"

namespace gpcyl {

namespace {

// int_{-s_max}^{s_max} f by composite Simpson
double simpson(const std::function<double(double)>& f, double a, double b, int intervals = 4000) {
    const double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int k = 1; k < intervals; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
    return s * h / 3.0;
}

}  // namespace

PhaseProfile default_phase_profile() {
    // int_{-1}^{1} (1 - s^2)^6 ds = 2 * 12!! / 13!!
    const double norm2 = 2.0 * 46080.0 / 135135.0;
    const double A = 1.0 / std::sqrt(norm2);
    PhaseProfile p;
    p.half_support = 1.0;
    p.slope = [A](double s) {
        const double t = 1.0 - s * s;
        return t > 0.0 ? A * t * t * t : 0.0;
    };
    p.value = [A](double s) {
        const double u = std::clamp(s, -1.0, 1.0);
        auto prim = [](double t) {
            const double t2 = t * t;
            return t * (1.0 - t2 + 0.6 * t2 * t2 - t2 * t2 * t2 / 7.0);
        };
        return A * (prim(u) - prim(-1.0));
    };
    return p;
}

ScalingFamilyMember scaling_family(double p, int n, double alpha, const PhaseProfile& profile,
                                   std::size_t n_points) {
    if (n < 1) throw DomainError("scaling_family: n must be positive");
    ScalingFamilyMember out;
    out.mu = n;
    const double a_p = std::abs(p);
    const double s_max = profile.half_support;

    if (a_p == 0.0) {
        out.field.grid = Grid1D::span(-10.0, 10.0, std::max<std::size_t>(n_points, 16));
        out.field.values.assign(out.field.grid.n, std::polar(1.0, alpha));
        return out;
    }

    const double i2 = simpson([&](double s) { return std::pow(profile.slope(s), 2); }, -s_max, s_max);
    const double i3 = simpson([&](double s) { return std::pow(profile.slope(s), 3); }, -s_max, s_max);
    if (std::abs(i2 - 1.0) > 1e-8) throw DomainError("scaling_family: ||xi'||_2 must be 1");
    double slope_max = 0.0;
    for (int k = 0; k <= 4000; ++k) {
        slope_max = std::max(slope_max, std::abs(profile.slope(-s_max + 2.0 * s_max * k / 4000.0)));
    }

    const double mu = out.mu;
    const double a = mu * mu * mu * i3 / kSqrt2;
    const double b = kSqrt2 * mu * mu * i2;
    const double disc = b * b - 4.0 * a * a_p;
    if (disc < 0.0) throw DomainError("scaling_family: no admissible epsilon; increase n");
    const double eps = 2.0 * a_p / (b + std::sqrt(disc));  // smaller positive root
    if (!(mu * eps * slope_max < 1.0)) {
        throw DomainError("scaling_family: mu eps ||xi'||_inf >= 1; increase n");
    }
    out.epsilon = eps;

    const double half_width = 1.25 * s_max / eps;
    out.field.grid = Grid1D::span(-half_width, half_width, n_points);
    out.field.values.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double s = eps * out.field.grid.x(i);
        const double rho = 1.0 - mu * eps * profile.slope(s);
        const double theta = kSqrt2 * mu * profile.value(s);
        // the conjugate member carries momentum -|p|
        const double sign = p > 0.0 ? 1.0 : -1.0;
        out.field.values[i] = std::polar(rho, alpha + sign * theta);
    }
    return out;
}

HarmonicCorrection::HarmonicCorrection(int modes, int quadrature_nodes) {
    if (modes < 1 || quadrature_nodes < 2 * modes + 2) {
        throw std::invalid_argument("HarmonicCorrection: need quadrature_nodes > 2 * modes");
    }
    const int N = quadrature_nodes;
    std::vector<double> g(N);
    for (int k = 0; k < N; ++k) {
        const double t = 2.0 * kPi * k / N;
        g[k] = -std::atan(4.0 * std::cos(t) / 3.0);
    }
    coef_.assign(static_cast<std::size_t>(modes) + 1, {0.0, 0.0});
    for (int m = 0; m <= modes; ++m) {
        double am = 0.0, bm = 0.0;
        for (int k = 0; k < N; ++k) {
            const double t = 2.0 * kPi * k / N;
            am += g[k] * std::cos(m * t);
            bm += g[k] * std::sin(m * t);
        }
        const double scale = (m == 0 ? 1.0 : 2.0) / N;
        // r^m (a cos + b sin) = Re((a - i b) z^m)
        coef_[static_cast<std::size_t>(m)] = {am * scale, -bm * scale};
    }
}

double HarmonicCorrection::value(double x, double y) const {
    const std::complex<double> z(0.5 * x, 0.5 * y);
    std::complex<double> acc{};
    for (std::size_t m = coef_.size(); m-- > 0;) acc = acc * z + coef_[m];
    return acc.real();
}

std::pair<double, double> HarmonicCorrection::gradient(double x, double y) const {
    // phi = Re F(w/2); d_x phi = Re F'(w/2)/2, d_y phi = -Im F'(w/2)/2
    const std::complex<double> z(0.5 * x, 0.5 * y);
    std::complex<double> acc{};
    for (std::size_t m = coef_.size(); m-- > 1;) acc = acc * z + static_cast<double>(m) * coef_[m];
    return {0.5 * acc.real(), -0.5 * acc.imag()};
}

double HarmonicCorrection::sup_norm() const {
    double s = 0.0;
    for (int ir = 0; ir <= 64; ++ir) {
        const double r = 2.0 * ir / 64.0;
        for (int it = 0; it < 256; ++it) {
            const double t = 2.0 * kPi * it / 256.0;
            s = std::max(s, std::abs(value(r * std::cos(t), r * std::sin(t))));
        }
    }
    return s;
}

std::complex<double> unit_vortex_pair(std::complex<double> z, const HarmonicCorrection& phi) {
    const std::complex<double> I(0.0, 1.0);
    const std::complex<double> a = std::conj(z - I);
    const std::complex<double> b = z + I;
    const double na = std::abs(a);
    const double nb = std::abs(b);
    if (na == 0.0 || nb == 0.0) return {0.0, 0.0};
    return (a / na) * (b / nb) * std::polar(1.0, phi.value(z.real(), z.imag()));
}

CylinderGrid vortex_pair_grid(const VortexPairSpec& spec, double h, double margin) {
    const double half = 2.0 * spec.R + margin;
    CylinderGrid g;
    g.x_min = -half;
    g.x_max = half;
    g.n_x = static_cast<std::size_t>(std::ceil(2.0 * half / h)) + 1;
    std::size_t ny = static_cast<std::size_t>(std::ceil(spec.L / h));
    ny += ny % 2;
    g.n_y = std::max<std::size_t>(ny, 4);
    g.period_L = spec.L;
    g.lambda = 1.0;
    g.validate();
    return g;
}

ComplexField2D vortex_pair_field(const VortexPairSpec& spec, const CylinderGrid& grid) {
    if (!(spec.R >= 1.0)) throw DomainError("vortex_pair_field: R must be at least 1");
    if (!(spec.L >= 4.0 * spec.R)) throw DomainError("vortex_pair_field: requires L >= 4R");
    if (std::abs(grid.period_L - spec.L) > 1e-12 * spec.L) {
        throw GridMismatch("vortex_pair_field: grid period must equal L");
    }
    const HarmonicCorrection phi(spec.harmonic_modes, spec.quadrature_nodes);
    const std::complex<double> I(0.0, 1.0);
    const double R = spec.R;
    ComplexField2D f = ComplexField2D::filled(grid, {1.0, 0.0});
    for (std::size_t i = 0; i < grid.n_x; ++i) {
        const double x = grid.x(i);
        for (std::size_t j = 0; j < grid.n_y; ++j) {
            const double yr = grid.y(j);
            const double y = yr - spec.L * std::round(yr / spec.L);
            const std::complex<double> z(x, y);
            if (std::abs(z) >= 2.0 * R) continue;
            std::complex<double> value = unit_vortex_pair(z / R, phi);
            const double d_up = std::abs(z - I * R);
            const double d_down = std::abs(z + I * R);
            if (d_up < 1.0) value *= d_up;
            else if (d_down < 1.0) value *= d_down;
            f.at(i, j) = value;
        }
    }
    return f;
}

double vortex_pair_momentum(const VortexPairSpec& spec, const CylinderGrid& grid) {
    return momentum(vortex_pair_field(spec, grid), PhaseMode::tails_only).p_theta;
}

double find_R_for_momentum(double p, double L, double h) {
    const double target = p * L;
    const double lo_bound = 5.0 * kPi + kPi * kPi;
    const double hi_bound = kPi * L / 2.0 - 3.0 * kPi - kPi * kPi;
    if (!(p > 0.0 && p < kPi / 2.0) || target < lo_bound || target > hi_bound) {
        throw BracketError("find_R_for_momentum: p L = " + std::to_string(target) +
                           " outside the admissible interval");
    }
    auto P = [&](double R) {
        VortexPairSpec s;
        s.R = R;
        s.L = L;
        return vortex_pair_momentum(s, vortex_pair_grid(s, h));
    };
    double lo = 1.0;
    double hi = L / 4.0;
    const double p_lo = P(lo);
    const double p_hi = P(hi);
    if (!(p_lo < target && target < p_hi)) {
        throw BracketError("find_R_for_momentum: momentum does not bracket p L");
    }
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 80; ++it) {
        mid = 0.5 * (lo + hi);
        const double pm = P(mid);
        if (std::abs(pm - target) < 1e-3 * L) return mid;
        (pm < target ? lo : hi) = mid;
    }
    return mid;
}

ComplexField2D to_unit_torus(const ComplexField2D& field_on_L) {
    ComplexField2D f = field_on_L;
    f.grid.lambda = field_on_L.grid.lambda / field_on_L.grid.period_L;
    f.grid.period_L = 1.0;
    return f;
}

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

Field1D winding_counterexample(int n, int k, const Grid1D& grid) {
    if (n < 1) throw DomainError("winding_counterexample: n must be positive");
    Field1D f;
    f.grid = grid;
    f.values.resize(grid.n);
    const std::complex<double> I(0.0, 1.0);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        const double s = n * x;
        const double chi = 1.0 - smooth_step(std::abs(s) - 1.0);
        const double theta = smooth_step((s + 2.0) / 4.0);
        const std::complex<double> base = std::tanh(x / kSqrt2) + I * (chi / n);
        f.values[i] = base * std::polar(1.0, 2.0 * kPi * k * theta);
    }
    return f;
}

}  // namespace gpcyl
