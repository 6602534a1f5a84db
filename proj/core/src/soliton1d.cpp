#include "gpcyl/soliton1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpcyl/errors.hpp"

namespace gpcyl {

namespace {

void require_speed(double c, bool strict, const char* who) {
    const bool ok = strict ? std::abs(c) < kSqrt2 : std::abs(c) <= kSqrt2;
    if (!ok || std::isnan(c)) {
        throw DomainError(std::string(who) + ": speed out of range: " + std::to_string(c));
    }
}

double width_factor(double c) { return std::sqrt(std::max(0.0, 2.0 - c * c)); }

}  // namespace

Grid1D Grid1D::span(double a, double b, std::size_t n, int order) {
    Grid1D g;
    g.x_min = a;
    g.n = n;
    g.dx = (b - a) / static_cast<double>(n - 1);
    g.stencil_order = order;
    return g;
}

std::complex<double> soliton_profile(double c, double x) {
    require_speed(c, false, "soliton_profile");
    const double s = width_factor(c);
    return {s / kSqrt2 * std::tanh(s * x / 2.0), -c / kSqrt2};
}

std::complex<double> soliton_profile_derivative(double c, double x) {
    require_speed(c, false, "soliton_profile_derivative");
    const double s = width_factor(c);
    const double ch = std::cosh(s * x / 2.0);
    return {s * s / (2.0 * kSqrt2) / (ch * ch), 0.0};
}

double soliton_energy(double c) {
    require_speed(c, false, "soliton_energy");
    const double s = width_factor(c);
    return s * s * s / 3.0;
}

double xi(double c) {
    if (!(c >= 0.0 && c < kSqrt2)) {
        throw DomainError("xi: argument outside [0, sqrt 2): " + std::to_string(c));
    }
    const double s = width_factor(c);
    // pi/2 - arctan(c/s) written as atan2(s, c) to avoid cancellation near c = sqrt 2
    return std::atan2(s, c) - 0.5 * c * s;
}

double xi_derivative(double c) {
    if (!(c >= 0.0 && c < kSqrt2)) {
        throw DomainError("xi_derivative: argument outside [0, sqrt 2)");
    }
    return -width_factor(c);
}

double soliton_momentum(double c) {
    require_speed(c, true, "soliton_momentum");
    if (c == 0.0) {
        throw DomainError("soliton_momentum: the black soliton has only the class pi/2");
    }
    return c > 0.0 ? xi(c) : -xi(-c);
}

double reduce_momentum(double p, double period) {
    double r = p - period * std::floor(p / period + 0.5);
    const double half = 0.5 * period;
    if (r <= -half) r += period;
    if (r > half) r -= period;
    return r;
}

double class_distance(double a, double b, double period) {
    return std::abs(reduce_momentum(a - b, period));
}

double speed_from_momentum(double p) {
    const double q = reduce_momentum(p);
    if (q == 0.0) {
        throw DomainError("speed_from_momentum: zero momentum class has no soliton");
    }
    const double a = std::abs(q);
    const double sign = q > 0.0 ? 1.0 : -1.0;
    if (a >= kPi / 2.0) return 0.0;

    const double c_max = kSqrt2 - 1e-9;
    double c = std::clamp(kSqrt2 * (1.0 - 2.0 * a / kPi), 0.0, c_max);
    bool newton_ok = true;
    for (int it = 0; it < 60; ++it) {
        const double f = xi(c) - a;
        if (std::abs(f) < 1e-15) break;
        const double next = c - f / xi_derivative(c);
        if (!(next >= 0.0 && next < kSqrt2)) {
            newton_ok = false;
            break;
        }
        if (std::abs(next - c) < 1e-16) {
            c = next;
            break;
        }
        c = next;
    }
    if (!newton_ok || std::abs(xi(c) - a) >= 1e-12) {
        // xi is decreasing on [0, sqrt 2)
        double lo = 0.0;
        double hi = kSqrt2;
        for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid >= kSqrt2) break;
            (xi(mid) > a ? lo : hi) = mid;
        }
        c = 0.5 * (lo + hi);
        if (c >= kSqrt2) c = lo;
    }
    return sign * c;
}

double speed_from_momentum_derivative(double p) {
    const double c = speed_from_momentum(p);
    return -1.0 / width_factor(c);
}

double min_energy_1d(double p) {
    const double q = reduce_momentum(p);
    if (q == 0.0) return 0.0;
    return soliton_energy(speed_from_momentum(q));
}

double full_line_min_energy(double q) {
    if (std::abs(q) >= kPi / 2.0) return 2.0 * kSqrt2 / 3.0;
    return min_energy_1d(q);
}

double soliton_eta(double c, double x) {
    require_speed(c, false, "soliton_eta");
    const double s = width_factor(c);
    const double ch = std::cosh(s * x / 2.0);
    return s * s / (2.0 * ch * ch);
}

HydroPair soliton_hydro(double c, const Grid1D& grid) {
    require_speed(c, true, "soliton_hydro");
    if (c == 0.0) throw DomainError("soliton_hydro: black soliton is not liftable");
    HydroPair pair;
    pair.grid = grid;
    pair.eta.resize(grid.n);
    pair.v.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double eta = soliton_eta(c, grid.x(i));
        pair.eta[i] = eta;
        pair.v[i] = c * eta / (2.0 * (1.0 - eta));
    }
    return pair;
}

}  // namespace gpcyl
