#include "gpcyl/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>
#include <mutex>
#include <thread>

#include "gpcyl/errors.hpp"
#include "gpcyl/soliton1d.hpp"
#include "gpcyl/testfields.hpp"

namespace gpcyl {

namespace {

double bump3(double s) {
    const double t = 1.0 - s * s;
    return t > 0.0 ? t * t * t : 0.0;
}

ComplexField2D relabel(ComplexField2D f, double lambda) {
    f.grid.lambda = lambda;
    return f;
}

struct NamedSeed {
    std::string name;
    ComplexField2D field;
};

PointResult run_seeds(double p, double lambda, const SweepProtocol& protocol,
                      const std::vector<NamedSeed>& seeds) {
    const auto t0 = std::chrono::steady_clock::now();
    PointResult out;
    double best = std::numeric_limits<double>::infinity();
    bool have = false;
    for (const auto& s : seeds) {
        MinimizeResult r;
        try {
            r = minimize(s.field, p, protocol.options);
        } catch (const LiftError&) {
            continue;
        } catch (const std::invalid_argument&) {
            continue;
        }
        // converged runs win ties; otherwise the lowest energy is the best upper bound
        if (!have || r.energy.total < best) {
            best = r.energy.total;
            out.best = std::move(r.field);
            out.best_seed = s.name;
            out.row.energy_min = r.energy.total;
            out.row.kinetic_y = r.energy.kinetic_y;
            out.row.converged = r.converged;
            have = true;
        }
    }
    out.row.lambda = lambda;
    out.row.p = p;
    out.row.frak_I = min_energy_1d(p);
    if (!have) {
        out.row.energy_min = std::numeric_limits<double>::quiet_NaN();
        out.row.converged = false;
    }
    out.row.gap = out.row.energy_min - out.row.frak_I;
    out.row.runtime_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

std::vector<NamedSeed> standard_seeds(double p, double lambda, const SweepProtocol& protocol) {
    const CylinderGrid g = protocol.grid(lambda);
    std::vector<NamedSeed> seeds;
    if (protocol.soliton_seed) seeds.push_back({"soliton", soliton_seed(g, p, protocol.tail_width)});
    if (protocol.perturbed_seed) {
        seeds.push_back({"perturbed", perturbed_soliton_seed(g, p, protocol.noise, protocol.options.seed,
                                                             protocol.tail_width)});
    }
    if (protocol.vortex_seed) {
        if (auto v = vortex_seed(g, p, protocol.tail_width)) seeds.push_back({"vortex", std::move(*v)});
    }
    return seeds;
}

}  // namespace

CylinderGrid SweepProtocol::grid(double lambda) const {
    return CylinderGrid::symmetric(half_width, n_x, n_y, lambda, 1.0);
}

MinimizeOptions minimize_options_from_config(const Config& cfg, MinimizeOptions o) {
    o.max_iters = static_cast<int>(cfg.get_int("max_iters", o.max_iters));
    o.step_init = cfg.get_double("step_init", o.step_init);
    o.grad_tol = cfg.get_double("grad_tol", o.grad_tol);
    o.momentum_tol = cfg.get_double("momentum_tol", o.momentum_tol);
    o.pohozaev_every = static_cast<int>(cfg.get_int("pohozaev_every", o.pohozaev_every));
    o.backtrack_factor = cfg.get_double("backtrack_factor", o.backtrack_factor);
    o.seed = static_cast<std::uint64_t>(cfg.get_int("seed", static_cast<long>(o.seed)));
    o.precondition = cfg.get_bool("precondition", o.precondition);
    o.validate();
    return o;
}

SweepProtocol SweepProtocol::from_config(const Config& cfg) {
    SweepProtocol s;
    s.half_width = cfg.get_double("half_width", s.half_width);
    s.n_x = static_cast<std::size_t>(cfg.get_int("n_x", static_cast<long>(s.n_x)));
    s.n_y = static_cast<std::size_t>(cfg.get_int("n_y", static_cast<long>(s.n_y)));
    s.tail_width = static_cast<std::size_t>(cfg.get_int("tail_width", static_cast<long>(s.tail_width)));
    s.noise = cfg.get_double("noise", s.noise);
    s.soliton_seed = cfg.get_bool("seed_soliton", s.soliton_seed);
    s.perturbed_seed = cfg.get_bool("seed_perturbed", s.perturbed_seed);
    s.vortex_seed = cfg.get_bool("seed_vortex", s.vortex_seed);
    s.continuation = cfg.get_bool("continuation", s.continuation);
    s.energy_tol = cfg.get_double("energy_tol", s.energy_tol);
    s.threads = static_cast<unsigned>(cfg.get_int("threads", 0));
    s.options = minimize_options_from_config(cfg, s.options);
    return s;
}

ComplexField2D soliton_seed(const CylinderGrid& grid, double p, std::size_t tail_width) {
    return sample_soliton_field(grid, speed_from_momentum(p), 0.0, 0.0, tail_width);
}

ComplexField2D perturbed_soliton_seed(const CylinderGrid& grid, double p, double noise,
                                      std::uint64_t seed, std::size_t tail_width) {
    ComplexField2D f = soliton_seed(grid, p, tail_width);
    if (noise <= 0.0) return f;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> centre(-3.0, 3.0);
    std::uniform_real_distribution<double> width(2.0, 5.0);
    ComplexField2D w = ComplexField2D::filled(grid, {0.0, 0.0}, tail_width);
    for (int k = 1; k <= 3; ++k) {
        for (int sign : {1, -1}) {
            const cplx amp(unit(rng), unit(rng));
            const double x0 = centre(rng);
            const double r = width(rng);
            for (std::size_t i = 0; i < grid.n_x; ++i) {
                const cplx a = amp * bump3((grid.x(i) - x0) / r);
                if (a == cplx{}) continue;
                for (std::size_t j = 0; j < grid.n_y; ++j) {
                    const double phase = 2.0 * kPi * sign * k * grid.y(j) / grid.period_L;
                    w.at(i, j) += a * std::polar(1.0, phase);
                }
            }
        }
    }
    const double nw = norm(w);
    if (nw > 0.0) {
        for (std::size_t q = 0; q < f.values.size(); ++q) f.values[q] += (noise / nw) * w.values[q];
    }
    return f;
}

std::optional<ComplexField2D> vortex_seed(const CylinderGrid& grid, double p, std::size_t tail_width) {
    const double L = 1.0 / grid.lambda;
    if (L < 4.0) return std::nullopt;
    const double r_max = std::min(L / 4.0, 0.5 * std::min(-grid.x_min, grid.x_max) - 1.0);
    if (r_max < 1.0) return std::nullopt;
    CylinderGrid gL = grid;
    gL.period_L = L;
    gL.lambda = 1.0;
    auto build = [&](double R) {
        VortexPairSpec spec;
        spec.R = R;
        spec.L = L;
        ComplexField2D f = to_unit_torus(vortex_pair_field(spec, gL));
        f.grid.lambda = grid.lambda;
        f.tail_width = tail_width;
        return f;
    };
    auto mom = [&](const ComplexField2D& f) { return momentum(f, PhaseMode::tails_only).p_theta; };
    const double target = std::abs(reduce_momentum(p));
    double lo = 1.0, hi = r_max;
    ComplexField2D f_lo = build(lo);
    ComplexField2D f_hi = build(hi);
    const double m_lo = mom(f_lo), m_hi = mom(f_hi);
    ComplexField2D best;
    if (m_lo >= target) {
        best = std::move(f_lo);
    } else if (m_hi <= target) {
        best = std::move(f_hi);
    } else {
        best = std::move(f_lo);
        for (int it = 0; it < 40; ++it) {
            const double mid = 0.5 * (lo + hi);
            ComplexField2D f = build(mid);
            const double m = mom(f);
            best = std::move(f);
            if (std::abs(m - target) < 1e-3) break;
            (m < target ? lo : hi) = mid;
        }
    }
    if (p < 0.0) {
        for (auto& z : best.values) z = std::conj(z);
    }
    return best;
}

PointResult solve_point(double p, double lambda, const SweepProtocol& protocol,
                        const std::vector<ComplexField2D>& extra_seeds) {
    auto seeds = standard_seeds(p, lambda, protocol);
    for (std::size_t k = 0; k < extra_seeds.size(); ++k) {
        seeds.push_back({"neighbour" + std::to_string(k), relabel(extra_seeds[k], lambda)});
    }
    return run_seeds(p, lambda, protocol, seeds);
}

std::vector<SweepRow> SweepResult::rows() const {
    std::vector<SweepRow> r;
    r.reserve(points.size());
    for (const auto& pt : points) r.push_back(pt.row);
    return r;
}

SweepResult run_sweep(double p, const std::vector<double>& lambdas, const SweepProtocol& protocol) {
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0)) throw std::invalid_argument("sweep: lambdas must be positive");
        if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
            throw std::invalid_argument("sweep: lambdas must be strictly increasing");
        }
    }
    SweepResult res;
    res.points.resize(lambdas.size());
    parallel_for(lambdas.size(), worker_threads(protocol.threads), [&](std::size_t i) {
        res.points[i] = solve_point(p, lambdas[i], protocol);
    });

    if (protocol.continuation && lambdas.size() > 1) {
        // E_{l1}(psi) <= E_{l2}(psi) <= (l2/l1)^2 E_{l1}(psi) for l1 < l2, so descending from a
        // neighbour's minimizer enforces both sides of the sandwich on the upper bounds.
        auto improve = [&](std::size_t target, std::size_t from) {
            auto& dst = res.points[target];
            if (res.points[from].best.values.empty()) return false;
            const double t_start = dst.row.runtime_s;
            PointResult cand = run_seeds(p, lambdas[target], protocol,
                                         {{"continuation", relabel(res.points[from].best, lambdas[target])}});
            if (std::isfinite(cand.row.energy_min) &&
                (!std::isfinite(dst.row.energy_min) || cand.row.energy_min < dst.row.energy_min - 1e-13)) {
                cand.row.runtime_s += t_start;
                cand.best_seed = "continuation:" + res.points[from].best_seed;
                dst = std::move(cand);
                return true;
            }
            dst.row.runtime_s += cand.row.runtime_s;
            return false;
        };
        for (int round = 0; round < 4; ++round) {
            bool changed = false;
            for (std::size_t i = lambdas.size() - 1; i-- > 0;) changed |= improve(i, i + 1);
            for (std::size_t i = 1; i < lambdas.size(); ++i) changed |= improve(i, i - 1);
            if (!changed) break;
        }
    }
    for (std::size_t i = 0; i + 1 < res.points.size(); ++i) {
        if (res.points[i + 1].row.energy_min < res.points[i].row.energy_min - protocol.energy_tol) {
            res.monotonicity_flags.push_back(i);
        }
    }
    return res;
}

std::vector<SweepRow> sweep_lambda(double p, const std::vector<double>& lambdas,
                                   const SweepProtocol& protocol) {
    return run_sweep(p, lambdas, protocol).rows();
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return csv_escape(buf);
    };
    std::ostringstream out;
    out << "lambda,p,energy_min,frak_I,gap,kinetic_y,converged,runtime_s\r\n";
    for (const auto& r : rows) {
        out << num(r.lambda) << ',' << num(r.p) << ',' << num(r.energy_min) << ',' << num(r.frak_I) << ','
            << num(r.gap) << ',' << num(r.kinetic_y) << ',' << (r.converged ? "true" : "false") << ','
            << num(r.runtime_s) << "\r\n";
    }
    return out.str();
}

ThresholdResult estimate_lambda_threshold(double p, double lo, double hi, double gap_margin,
                                          const SweepProtocol& protocol) {
    if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("threshold: need 0 < lo < hi");
    ThresholdResult res;
    // best genuinely two-dimensional state found so far, with its lambda
    std::optional<std::pair<double, ComplexField2D>> witness;

    auto evaluate = [&](double lambda) {
        std::vector<ComplexField2D> extra;
        if (witness) extra.push_back(witness->second);
        PointResult pt = solve_point(p, lambda, protocol, extra);
        const bool below = pt.row.gap < -gap_margin;
        res.trace.push_back({lambda, pt.row.gap, below});
        if (below && (!witness || lambda > witness->first)) witness.emplace(lambda, std::move(pt.best));
        return pt.row.gap;
    };

    const double g_lo = evaluate(lo);
    if (!(g_lo < -gap_margin)) {
        throw BracketError("threshold: gap at lo = " + std::to_string(g_lo) + " is not below -margin");
    }
    const double g_hi = evaluate(hi);
    if (!(std::abs(g_hi) <= gap_margin)) {
        throw BracketError("threshold: |gap| at hi = " + std::to_string(g_hi) + " exceeds the margin");
    }
    while (hi - lo > 0.05 * 0.5 * (lo + hi)) {
        const double mid = 0.5 * (lo + hi);
        (evaluate(mid) < -gap_margin ? lo : hi) = mid;
    }
    res.lo = lo;
    res.hi = hi;
    res.lambda_hat = 0.5 * (lo + hi);

    auto sorted = res.trace;
    std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.lambda < b.lambda; });
    bool seen_false = false;
    for (const auto& s : sorted) {
        if (!s.below) seen_false = true;
        else if (seen_false) res.monotone = false;
    }
    return res;
}

LipschitzReport lipschitz_check(double lambda, const std::vector<double>& p_grid,
                                const SweepProtocol& protocol) {
    LipschitzReport rep;
    rep.lambda = lambda;
    rep.p = p_grid;
    rep.energy_plus.assign(p_grid.size(), 0.0);
    rep.energy_minus.assign(p_grid.size(), 0.0);
    rep.converged.assign(p_grid.size(), false);
    rep.tolerance = std::max(protocol.options.grad_tol, protocol.energy_tol);

    parallel_for(p_grid.size(), worker_threads(protocol.threads), [&](std::size_t i) {
        const double p = p_grid[i];
        const PointResult plus = solve_point(p, lambda, protocol);
        // conjugate of each seed carries the opposite momentum
        std::vector<NamedSeed> seeds;
        for (auto& s : standard_seeds(p, lambda, protocol)) {
            for (auto& z : s.field.values) z = std::conj(z);
            seeds.push_back(std::move(s));
        }
        const PointResult minus = run_seeds(-p, lambda, protocol, seeds);
        rep.energy_plus[i] = plus.row.energy_min;
        rep.energy_minus[i] = minus.row.energy_min;
        rep.converged[i] = plus.row.converged && minus.row.converged;
    });

    const double tol = rep.tolerance;
    char buf[256];
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        if (!(p_grid[i] > 0.0 && p_grid[i] <= kPi / 2.0)) {
            std::snprintf(buf, sizeof(buf), "p=%.6g outside (0, pi/2]", p_grid[i]);
            rep.violations.emplace_back(buf);
        }
        if (!(rep.energy_plus[i] < kSqrt2 * p_grid[i] + tol)) {
            std::snprintf(buf, sizeof(buf), "I(%.6g)=%.12g not below sqrt2 p", p_grid[i], rep.energy_plus[i]);
            rep.violations.emplace_back(buf);
        }
        if (!(std::abs(rep.energy_plus[i] - rep.energy_minus[i]) <= tol)) {
            std::snprintf(buf, sizeof(buf), "I(%.6g)=%.12g differs from I(-p)=%.12g", p_grid[i],
                          rep.energy_plus[i], rep.energy_minus[i]);
            rep.violations.emplace_back(buf);
        }
        for (std::size_t j = i + 1; j < p_grid.size(); ++j) {
            const double lhs = std::abs(rep.energy_plus[i] - rep.energy_plus[j]);
            if (!(lhs <= kSqrt2 * std::abs(p_grid[i] - p_grid[j]) + 2.0 * tol)) {
                std::snprintf(buf, sizeof(buf), "slope between p=%.6g and p=%.6g exceeds sqrt2", p_grid[i],
                              p_grid[j]);
                rep.violations.emplace_back(buf);
            }
        }
    }
    return rep;
}

unsigned worker_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("GPCYL_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace gpcyl
