#pragma once

/// Fields on the truncated cylinder [x_min, x_max] x T_L, the y-average split
/// psi = psi0 + w0, boundary phases of psi0 and binary snapshots.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "gpcyl/grid1d.hpp"

namespace gpcyl {

struct CylinderGrid {
    double x_min = -30.0;
    double x_max = 30.0;
    std::size_t n_x = 601;
    std::size_t n_y = 4;
    double period_L = 1.0;
    double lambda = 1.0;
    /// Order of the x-derivative operator (2 or 4); not stored in snapshots.
    int stencil_order = 4;

    double dx() const { return (x_max - x_min) / static_cast<double>(n_x - 1); }
    double dy() const { return period_L / static_cast<double>(n_y); }
    double x(std::size_t i) const { return x_min + dx() * static_cast<double>(i); }
    double y(std::size_t j) const { return dy() * static_cast<double>(j); }
    std::size_t size() const { return n_x * n_y; }
    Grid1D x_grid() const;

    /// Throws std::invalid_argument when an invariant fails.
    void validate() const;
    /// Same node layout and geometry (lambda may differ).
    bool same_geometry(const CylinderGrid& other) const;

    static CylinderGrid symmetric(double half_width, std::size_t n_x, std::size_t n_y,
                                  double lambda = 1.0, double period = 1.0);
};

struct ComplexField2D {
    CylinderGrid grid;
    std::vector<cplx> values;  // index i * n_y + j
    std::size_t tail_width = 8;

    cplx& at(std::size_t i, std::size_t j) { return values[i * grid.n_y + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return values[i * grid.n_y + j]; }

    static ComplexField2D filled(const CylinderGrid& grid, cplx value, std::size_t tail_width = 8);
    /// y-constant extension of a 1D profile given on grid.x_grid().
    static ComplexField2D extend(const CylinderGrid& grid, const std::vector<cplx>& profile,
                                 std::size_t tail_width = 8);
};

struct ZeroModeSplit {
    std::vector<cplx> psi0;
    std::vector<cplx> w0;
};

struct BoundaryPhases {
    double theta_minus = 0.0;
    double theta_plus = 0.0;
    /// True when psi0 never vanishes and its phase is resolved across the whole
    /// interval, so theta_plus - theta_minus is the total winding and the momentum
    /// is a real number rather than only a class.
    bool lifted = false;
};

enum class PhaseMode {
    /// Lift across the whole interval when possible, otherwise tails only.
    automatic,
    /// Unwrap inside each tail starting from the principal value at its inner column.
    tails_only,
};

/// e^{i phase} u_c(x - shift) on every y-row.
ComplexField2D sample_soliton_field(const CylinderGrid& grid, double c, double shift = 0.0,
                                    double phase = 0.0, std::size_t tail_width = 8);

ZeroModeSplit zero_mode_split(const ComplexField2D& field);

/// Throws LiftError when |psi0| < 1/2 somewhere in a tail.
BoundaryPhases boundary_phases(const std::vector<cplx>& psi0, std::size_t tail_width,
                               PhaseMode mode = PhaseMode::automatic);
BoundaryPhases boundary_phases(const ComplexField2D& field, PhaseMode mode = PhaseMode::automatic);
/// True if every tail node has |psi0| >= 1/2.
bool tails_admissible(const std::vector<cplx>& psi0, std::size_t tail_width);

inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_snapshot(const ComplexField2D& field, const std::filesystem::path& path);
ComplexField2D read_snapshot(const std::filesystem::path& path);

}  // namespace gpcyl
