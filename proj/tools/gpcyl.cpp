// gpcyl: command-line front end for the cylinder solver.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include "gpcyl/config.hpp"
#include "gpcyl/errors.hpp"
#include "gpcyl/functionals.hpp"
#include "gpcyl/minimizer.hpp"
#include "gpcyl/soliton1d.hpp"
#include "gpcyl/sweep.hpp"
#include "gpcyl/testfields.hpp"
#include "gpcyl/verify.hpp"

using nlohmann::json;
using namespace gpcyl;

namespace {

json finite(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json energy_json(const EnergyBreakdown& e) {
    return {{"kinetic_x", e.kinetic_x}, {"kinetic_y", e.kinetic_y}, {"potential", e.potential}, {"total", e.total}};
}

json momentum_json(const MomentumReport& m) {
    return {{"p_theta", m.p_theta},
            {"p_untwisted", m.p_untwisted},
            {"lifted", m.lifted},
            {"theta_minus", m.theta_minus},
            {"theta_plus", m.theta_plus},
            {"slice_oscillation", m.slice_oscillation},
            {"period", m.period}};
}

json grid_json(const CylinderGrid& g) {
    return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"n_x", g.n_x},       {"n_y", g.n_y},
            {"period_L", g.period_L}, {"lambda", g.lambda}, {"stencil_order", g.stencil_order}};
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_soliton(double c, double p, bool have_c) {
    if (!have_c) c = speed_from_momentum(p);
    json j = {{"c", c}, {"energy", soliton_energy(c)}, {"xi_abs_c", xi(std::abs(c))}};
    if (c != 0.0) {
        j["momentum"] = soliton_momentum(c);
        j["xi_derivative"] = xi_derivative(std::abs(c));
    } else {
        j["momentum_class"] = kPi / 2.0;
    }
    if (!have_c) {
        j["p"] = p;
        j["frak_I"] = min_energy_1d(p);
        j["dc_dp"] = speed_from_momentum_derivative(p);
    }
    emit(j);
    return 0;
}

int cmd_measure(const std::string& path, const std::string& mode) {
    const auto f = read_snapshot(path);
    const auto pm = mode == "tails" ? PhaseMode::tails_only : PhaseMode::automatic;
    const auto e = energy(f);
    json j = {{"grid", grid_json(f.grid)},
              {"energy", energy_json(e)},
              {"momentum", momentum_json(momentum(f, pm))},
              {"slice_oscillation_bound", slice_oscillation_bound(f)},
              {"pohozaev_residual", pohozaev_residual(f)}};
    emit(j);
    return 0;
}

ComplexField2D initial_field(const Config& cfg, const CylinderGrid& g, double p, std::size_t tail,
                             std::uint64_t seed) {
    const std::string init = cfg.get_string("initializer", "soliton");
    if (init == "soliton") return soliton_seed(g, p, tail);
    if (init == "soliton+noise") return perturbed_soliton_seed(g, p, cfg.get_double("noise", 0.05), seed, tail);
    if (init == "vortex") {
        auto v = vortex_seed(g, p, tail);
        if (!v) throw std::invalid_argument("vortex initializer needs 1/lambda >= 4 and room for the pair");
        return *v;
    }
    if (init.rfind("snapshot:", 0) == 0) {
        // the snapshot brings its own grid; only lambda may be overridden
        auto f = read_snapshot(init.substr(9));
        if (cfg.has("lambda")) f.grid.lambda = g.lambda;
        f.tail_width = tail;
        return f;
    }
    throw std::invalid_argument("unknown initializer '" + init + "'");
}

int cmd_minimize(const std::string& config_path, const std::string& snapshot_out, bool history) {
    const Config cfg = Config::load(config_path);
    const auto opts = minimize_options_from_config(cfg);
    CylinderGrid g = CylinderGrid::symmetric(cfg.get_double("half_width", 30.0),
                                             static_cast<std::size_t>(cfg.get_int("n_x", 601)),
                                             static_cast<std::size_t>(cfg.get_int("n_y", 16)),
                                             cfg.get_double("lambda", 1.0), cfg.get_double("period", 1.0));
    g.stencil_order = static_cast<int>(cfg.get_int("stencil_order", 4));
    g.validate();
    const double p = cfg.get_double("p", 0.5);
    const auto tail = static_cast<std::size_t>(cfg.get_int("tail_width", 8));
    const auto init = initial_field(cfg, g, p, tail, opts.seed);
    const auto r = minimize(init, p, opts);
    json j = {{"grid", grid_json(r.field.grid)},
              {"target_p", p},
              {"energy", energy_json(r.energy)},
              {"momentum", momentum_json(r.momentum)},
              {"speed_estimate", r.speed_estimate},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"status", r.status},
              {"grad_norm", r.grad_norm},
              {"pohozaev_residual", r.pohozaev_residual},
              {"frak_I", min_energy_1d(p)},
              {"gap", r.energy.total - min_energy_1d(p)}};
    if (history) {
        json h = json::array();
        for (const auto& e : r.history) h.push_back({e.iter, e.energy, e.momentum, e.grad_norm});
        j["history"] = h;
    }
    if (!snapshot_out.empty()) {
        write_snapshot(r.field, snapshot_out);
        j["snapshot"] = snapshot_out;
    }
    emit(j);
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out) {
    const Config cfg = Config::load(config_path);
    const auto protocol = SweepProtocol::from_config(cfg);
    const double p = cfg.get_double("p", 0.5);
    const auto lambdas = cfg.get_list("lambdas");
    if (lambdas.empty()) throw std::invalid_argument("sweep: config needs lambdas = l1, l2, ...");
    const auto res = run_sweep(p, lambdas, protocol);
    const std::string csv = sweep_csv(res.rows());
    if (out.empty() || out == "-") {
        std::cout << csv;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out);
        f << csv;
    }
    for (auto i : res.monotonicity_flags) {
        std::cerr << "warning: energy_min decreases from lambda=" << lambdas[i] << " to lambda=" << lambdas[i + 1]
                  << '\n';
    }
    return 0;
}

int cmd_threshold(double p, double lo, double hi, double margin, const std::string& config_path) {
    SweepProtocol protocol;
    if (!config_path.empty()) protocol = SweepProtocol::from_config(Config::load(config_path));
    const auto r = estimate_lambda_threshold(p, lo, hi, margin, protocol);
    json trace = json::array();
    for (const auto& s : r.trace) trace.push_back({{"lambda", s.lambda}, {"gap", finite(s.gap)}, {"below", s.below}});
    emit({{"p", p},
          {"lambda_hat_estimate", r.lambda_hat},
          {"bracket", {r.lo, r.hi}},
          {"gap_margin", margin},
          {"monotone", r.monotone},
          {"note", "discretization-dependent estimate of the threshold, not an exact value"},
          {"trace", trace}});
    return 0;
}

int cmd_vortex(double R, double L, double h, const std::string& snapshot_out) {
    VortexPairSpec spec;
    spec.R = R;
    spec.L = L;
    if (!(R >= 1.0 && L >= 4.0 * R)) throw std::invalid_argument("vortex: need R >= 1 and L >= 4R");
    const auto g = vortex_pair_grid(spec, h);
    const auto f = vortex_pair_field(spec, g);
    const double P = vortex_pair_momentum(spec, g);
    const auto e = energy(f);
    const bool ok = std::abs(P - 2.0 * kPi * R) <= 3.0 * kPi + kPi * kPi;
    json j = {{"R", R}, {"L", L}, {"momentum", P}, {"energy", e.total}, {"bounds_ok", ok}, {"grid", grid_json(g)}};
    if (!snapshot_out.empty()) {
        write_snapshot(f, snapshot_out);
        j["snapshot"] = snapshot_out;
    }
    emit(j);
    return 0;
}

int cmd_verify(bool full, bool stability, const std::string& json_out) {
    VerifyOptions o;
    o.level = full ? VerifyLevel::full : VerifyLevel::fast;
    o.stability = stability;
    const auto r = verify_suite(o);
    for (const auto& c : r.checks) {
        std::cerr << (c.passed ? "ok   " : "FAIL ") << c.name << "  value=" << c.value << " tol=" << c.tolerance;
        if (!c.detail.empty()) std::cerr << "  (" << c.detail << ')';
        std::cerr << '\n';
    }
    if (full || !json_out.empty()) {
        if (json_out.empty() || json_out == "-") {
            std::cout << r.to_json() << '\n';
        } else {
            std::ofstream(json_out) << r.to_json() << '\n';
        }
    }
    return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy minimization for travelling waves on a cylinder"};
    app.require_subcommand(1);

    double c = 0.0, p = 0.5;
    auto* sol = app.add_subcommand("soliton", "closed forms of the dark soliton");
    auto* opt_c = sol->add_option("--c", c, "speed, |c| < sqrt(2)");
    auto* opt_p = sol->add_option("--p", p, "momentum in (-pi/2, pi/2]");
    opt_c->excludes(opt_p);

    std::string snapshot, mode = "auto";
    auto* meas = app.add_subcommand("measure", "energy and momentum of a snapshot");
    meas->add_option("--snapshot", snapshot, "snapshot file")->required();
    meas->add_option("--phase", mode, "boundary phase mode")->check(CLI::IsMember({"auto", "tails"}));

    std::string config, snap_out;
    bool history = false;
    auto* mini = app.add_subcommand("minimize", "minimize E_lambda at fixed momentum");
    mini->add_option("--config", config, "key=value file")->required();
    mini->add_option("--snapshot-out", snap_out, "write the minimizer here");
    mini->add_flag("--history", history, "include the iteration history");

    std::string out;
    auto* sweep = app.add_subcommand("sweep", "multi-start minimization over lambda");
    sweep->add_option("--config", config, "key=value file")->required();
    sweep->add_option("--out", out, "CSV path, '-' for stdout");

    double lo = 0.0, hi = 0.0, margin = 1e-3;
    auto* thr = app.add_subcommand("threshold", "bisection estimate of the threshold lambda");
    thr->add_option("--p", p)->required();
    thr->add_option("--lo", lo)->required();
    thr->add_option("--hi", hi)->required();
    thr->add_option("--margin", margin, "gap margin");
    thr->add_option("--config", config, "protocol overrides");

    double R = 2.0, L = 16.0, h = 0.1;
    auto* vort = app.add_subcommand("vortex", "build the periodized vortex pair");
    vort->add_option("--R", R)->required();
    vort->add_option("--L", L)->required();
    vort->add_option("--spacing", h, "grid spacing");
    vort->add_option("--snapshot-out", snap_out, "write the field here");

    bool fast = false, full = false, stability = false;
    std::string json_out;
    auto* ver = app.add_subcommand("verify", "run the built-in checks");
    auto* f_fast = ver->add_flag("--fast", fast);
    auto* f_full = ver->add_flag("--full", full);
    f_fast->excludes(f_full);
    ver->add_flag("--stability", stability);
    ver->add_option("--json", json_out, "write the JSON report here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sol) {
            if (!*opt_c && !*opt_p) throw std::invalid_argument("soliton: give --c or --p");
            return cmd_soliton(c, p, static_cast<bool>(*opt_c));
        }
        if (*meas) return cmd_measure(snapshot, mode);
        if (*mini) return cmd_minimize(config, snap_out, history);
        if (*sweep) return cmd_sweep(config, out);
        if (*thr) return cmd_threshold(p, lo, hi, margin, config);
        if (*vort) return cmd_vortex(R, L, h, snap_out);
        if (*ver) return cmd_verify(full, stability, json_out);
    } catch (const std::exception& e) {
        std::cerr << "gpcyl: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
