#include "gpcyl/cylinder_field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gpcyl/errors.hpp"
#include "gpcyl/soliton1d.hpp"
#include "gpcyl/stencil.hpp"

namespace gpcyl {

Grid1D CylinderGrid::x_grid() const {
    Grid1D g;
    g.x_min = x_min;
    g.dx = dx();
    g.n = n_x;
    g.stencil_order = stencil_order;
    return g;
}

void CylinderGrid::validate() const {
    if (!(x_max > x_min)) throw std::invalid_argument("CylinderGrid: x_max must exceed x_min");
    if (n_x < SbpOperator::min_size(stencil_order)) {
        throw std::invalid_argument("CylinderGrid: too few x nodes for the stencil");
    }
    if (n_y < 4 || n_y % 2 != 0) throw std::invalid_argument("CylinderGrid: n_y must be even and >= 4");
    if (!(period_L > 0.0)) throw std::invalid_argument("CylinderGrid: period must be positive");
    if (!(lambda > 0.0)) throw std::invalid_argument("CylinderGrid: lambda must be positive");
}

bool CylinderGrid::same_geometry(const CylinderGrid& o) const {
    return n_x == o.n_x && n_y == o.n_y && x_min == o.x_min && x_max == o.x_max &&
           period_L == o.period_L && stencil_order == o.stencil_order;
}

CylinderGrid CylinderGrid::symmetric(double half_width, std::size_t n_x, std::size_t n_y,
                                     double lambda, double period) {
    CylinderGrid g;
    g.x_min = -half_width;
    g.x_max = half_width;
    g.n_x = n_x;
    g.n_y = n_y;
    g.lambda = lambda;
    g.period_L = period;
    g.validate();
    return g;
}

ComplexField2D ComplexField2D::filled(const CylinderGrid& grid, cplx value, std::size_t tail_width) {
    grid.validate();
    ComplexField2D f;
    f.grid = grid;
    f.values.assign(grid.size(), value);
    f.tail_width = tail_width;
    return f;
}

ComplexField2D ComplexField2D::extend(const CylinderGrid& grid, const std::vector<cplx>& profile,
                                      std::size_t tail_width) {
    if (profile.size() != grid.n_x) throw GridMismatch("extend: profile length differs from n_x");
    ComplexField2D f = filled(grid, cplx{}, tail_width);
    for (std::size_t i = 0; i < grid.n_x; ++i) {
        std::fill_n(f.values.begin() + static_cast<std::ptrdiff_t>(i * grid.n_y), grid.n_y, profile[i]);
    }
    return f;
}

ComplexField2D sample_soliton_field(const CylinderGrid& grid, double c, double shift, double phase,
                                    std::size_t tail_width) {
    std::vector<cplx> profile(grid.n_x);
    const cplx rot = std::polar(1.0, phase);
    for (std::size_t i = 0; i < grid.n_x; ++i) profile[i] = rot * soliton_profile(c, grid.x(i) - shift);
    return ComplexField2D::extend(grid, profile, tail_width);
}

ZeroModeSplit zero_mode_split(const ComplexField2D& field) {
    const std::size_t nx = field.grid.n_x;
    const std::size_t ny = field.grid.n_y;
    ZeroModeSplit s;
    s.psi0.resize(nx);
    s.w0.resize(nx * ny);
    for (std::size_t i = 0; i < nx; ++i) {
        cplx sum{};
        for (std::size_t j = 0; j < ny; ++j) sum += field.values[i * ny + j];
        const cplx mean = sum / static_cast<double>(ny);
        s.psi0[i] = mean;
        for (std::size_t j = 0; j < ny; ++j) s.w0[i * ny + j] = field.values[i * ny + j] - mean;
    }
    return s;
}

bool tails_admissible(const std::vector<cplx>& psi0, std::size_t tail_width) {
    const std::size_t n = psi0.size();
    const std::size_t t = std::clamp<std::size_t>(tail_width, 1, n / 2);
    for (std::size_t k = 0; k < t; ++k) {
        if (std::abs(psi0[k]) < 0.5 || std::abs(psi0[n - 1 - k]) < 0.5) return false;
    }
    return true;
}

BoundaryPhases boundary_phases(const std::vector<cplx>& psi0, std::size_t tail_width, PhaseMode mode) {
    const std::size_t n = psi0.size();
    if (n < 2) throw LiftError("boundary_phases: need at least two nodes");
    const std::size_t t = std::clamp<std::size_t>(tail_width, 1, n / 2);
    if (!tails_admissible(psi0, t)) {
        throw LiftError("boundary_phases: |psi0| < 1/2 in a tail region");
    }
    auto step = [&](std::size_t from, std::size_t to) {
        return std::arg(psi0[to] * std::conj(psi0[from]));
    };

    BoundaryPhases out;
    if (mode == PhaseMode::automatic) {
        bool resolved = true;
        for (std::size_t i = 0; i < n && resolved; ++i) resolved = std::abs(psi0[i]) > 0.0;
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < n && resolved; ++i) {
            const double d = step(i, i + 1);
            resolved = std::abs(d) <= std::numbers::pi / 2.0;
            total += d;
        }
        if (resolved) {
            out.theta_minus = std::arg(psi0[0]);
            out.theta_plus = out.theta_minus + total;
            out.lifted = true;
            return out;
        }
    }
    double left = std::arg(psi0[t - 1]);
    for (std::size_t i = t - 1; i > 0; --i) left += step(i, i - 1);
    double right = std::arg(psi0[n - t]);
    for (std::size_t i = n - t; i + 1 < n; ++i) right += step(i, i + 1);
    out.theta_minus = left;
    out.theta_plus = right;
    out.lifted = false;
    return out;
}

BoundaryPhases boundary_phases(const ComplexField2D& field, PhaseMode mode) {
    return boundary_phases(zero_mode_split(field).psi0, field.tail_width, mode);
}

namespace {

constexpr char kMagic[8] = {'G', 'P', 'C', 'Y', 'L', '1', '\0', '\0'};

template <class T>
void put(std::string& buf, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    buf.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T take(const std::string& buf, std::size_t& pos) {
    if (pos + sizeof(T) > buf.size()) throw FormatError("snapshot: truncated file");
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, buf.data() + pos, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    pos += sizeof(T);
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

}  // namespace

void write_snapshot(const ComplexField2D& field, const std::filesystem::path& path) {
    const auto& g = field.grid;
    if (field.values.size() != g.size()) throw GridMismatch("write_snapshot: payload size mismatch");
    std::string buf;
    buf.reserve(56 + 16 * g.size());
    buf.append(kMagic, sizeof(kMagic));
    put<std::uint32_t>(buf, kSnapshotVersion);
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.n_x));
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.n_y));
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(field.tail_width));
    put<double>(buf, g.x_min);
    put<double>(buf, g.x_max);
    put<double>(buf, g.period_L);
    put<double>(buf, g.lambda);
    for (const cplx& z : field.values) {
        put<double>(buf, z.real());
        put<double>(buf, z.imag());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_snapshot: cannot open " + path.string());
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("write_snapshot: write failed for " + path.string());
}

ComplexField2D read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_snapshot: cannot open " + path.string());
    const std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < sizeof(kMagic) || std::memcmp(buf.data(), kMagic, sizeof(kMagic)) != 0) {
        throw FormatError("snapshot: bad magic");
    }
    std::size_t pos = sizeof(kMagic);
    const auto version = take<std::uint32_t>(buf, pos);
    if (version != kSnapshotVersion) throw FormatError("snapshot: unsupported version " + std::to_string(version));
    ComplexField2D f;
    f.grid.n_x = take<std::uint32_t>(buf, pos);
    f.grid.n_y = take<std::uint32_t>(buf, pos);
    f.tail_width = take<std::uint32_t>(buf, pos);
    f.grid.x_min = take<double>(buf, pos);
    f.grid.x_max = take<double>(buf, pos);
    f.grid.period_L = take<double>(buf, pos);
    f.grid.lambda = take<double>(buf, pos);
    const std::size_t count = f.grid.n_x * f.grid.n_y;
    if (buf.size() - pos != 16 * count) throw FormatError("snapshot: payload does not match n_x * n_y");
    try {
        f.grid.validate();
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("snapshot: invalid grid: ") + e.what());
    }
    f.values.resize(count);
    for (auto& z : f.values) {
        const double re = take<double>(buf, pos);
        const double im = take<double>(buf, pos);
        z = {re, im};
    }
    return f;
}

}  // namespace gpcyl
