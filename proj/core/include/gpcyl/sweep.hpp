#pragma once

/// Multi-start minimization over lambda, threshold bisection, Lipschitz bounds and CSV output.
///
/// Every lambda point is solved on the unit torus.  Seeds are the dark soliton of
/// speed c_p, the soliton plus a mean-zero y-dependent perturbation, and (when the
/// torus is long enough) a vortex pair tuned to the target momentum.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gpcyl/config.hpp"
#include "gpcyl/minimizer.hpp"

namespace gpcyl {

struct SweepProtocol {
    double half_width = 30.0;
    std::size_t n_x = 601;
    std::size_t n_y = 16;
    std::size_t tail_width = 8;
    MinimizeOptions options;
    /// L2 norm of the y-dependent perturbation in the perturbed seed.
    double noise = 0.05;
    bool soliton_seed = true;
    bool perturbed_seed = true;
    bool vortex_seed = true;
    /// Re-seed each lambda from its neighbours' minimizers until no energy improves.
    bool continuation = true;
    /// Slack of the monotonicity diagnostic and of the sandwich bounds.
    double energy_tol = 1e-6;
    /// Worker threads; 0 reads GPCYL_THREADS and defaults to 1.
    unsigned threads = 0;

    CylinderGrid grid(double lambda) const;
    /// Reads half_width, n_x, n_y, tail_width, noise, seeds, continuation, threads
    /// and the minimizer keys.
    static SweepProtocol from_config(const Config& cfg);
};

MinimizeOptions minimize_options_from_config(const Config& cfg, MinimizeOptions base = {});

ComplexField2D soliton_seed(const CylinderGrid& grid, double p, std::size_t tail_width = 8);
/// Soliton plus a smooth y-dependent perturbation with zero y-mean and L2 norm `noise`.
ComplexField2D perturbed_soliton_seed(const CylinderGrid& grid, double p, double noise,
                                      std::uint64_t seed, std::size_t tail_width = 8);
/// Vortex pair on the unit torus (period 1/lambda before rescaling) with momentum
/// tuned to p; empty when 1/lambda < 4 or the interval cannot hold the pair.
std::optional<ComplexField2D> vortex_seed(const CylinderGrid& grid, double p, std::size_t tail_width = 8);

struct SweepRow {
    double lambda = 0.0;
    double p = 0.0;
    double energy_min = 0.0;
    double frak_I = 0.0;
    double gap = 0.0;
    double kinetic_y = 0.0;
    bool converged = false;
    double runtime_s = 0.0;
};

struct PointResult {
    SweepRow row;
    ComplexField2D best;
    std::string best_seed;
};

/// Multi-start at one lambda; extra seeds are relabelled to this lambda.
PointResult solve_point(double p, double lambda, const SweepProtocol& protocol,
                        const std::vector<ComplexField2D>& extra_seeds = {});

struct SweepResult {
    std::vector<PointResult> points;
    /// Indices i where energy_min decreases from lambda_i to lambda_{i+1} beyond tolerance.
    std::vector<std::size_t> monotonicity_flags;
    std::vector<SweepRow> rows() const;
};

SweepResult run_sweep(double p, const std::vector<double>& lambdas, const SweepProtocol& protocol);
std::vector<SweepRow> sweep_lambda(double p, const std::vector<double>& lambdas,
                                   const SweepProtocol& protocol);

std::string csv_escape(const std::string& field);
/// Header lambda,p,energy_min,frak_I,gap,kinetic_y,converged,runtime_s.
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct ThresholdStep {
    double lambda = 0.0;
    double gap = 0.0;
    bool below = false;  // gap < -margin
};

struct ThresholdResult {
    double lambda_hat = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<ThresholdStep> trace;
    /// Predicate true below and false above every traced lambda.
    bool monotone = true;
};

/// Bisection on gap(lambda) < -gap_margin until hi - lo <= 0.05 * midpoint.
/// Throws BracketError if lo does not satisfy the predicate or |gap(hi)| > gap_margin.
ThresholdResult estimate_lambda_threshold(double p, double lo, double hi, double gap_margin,
                                          const SweepProtocol& protocol);

struct LipschitzReport {
    double lambda = 0.0;
    double tolerance = 0.0;
    std::vector<double> p;
    std::vector<double> energy_plus;
    std::vector<double> energy_minus;
    std::vector<bool> converged;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

LipschitzReport lipschitz_check(double lambda, const std::vector<double>& p_grid,
                                const SweepProtocol& protocol);

/// Worker count from the request, GPCYL_THREADS, or 1.
unsigned worker_threads(unsigned requested);
/// Runs fn(i) for i in [0, n) on at most `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace gpcyl
