#include "gpcyl/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <tuple>
#include <mutex>
#include <numbers>
#include <utility>

namespace gpcyl {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new arrays is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

fftw_plan cached_plan(std::size_t n_rows, std::size_t n_y, int sign) {
    static std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex());
    const auto key = std::make_tuple(n_rows, n_y, sign);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::vector<cplx> scratch(n_rows * n_y);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int n = static_cast<int>(n_y);
    fftw_plan plan = fftw_plan_many_dft(1, &n, static_cast<int>(n_rows), buf, nullptr, 1, n, buf,
                                        nullptr, 1, n, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(key, plan);
    return plan;
}

void run(cplx* data, std::size_t n_rows, std::size_t n_y, int sign) {
    if (n_rows == 0 || n_y == 0) return;
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(cached_plan(n_rows, n_y, sign), buf, buf);
}

}  // namespace

double y_wavenumber(std::size_t k, std::size_t n_y, double period) {
    if (2 * k == n_y) return 0.0;
    const double kk = k < n_y / 2 + (n_y % 2) ? static_cast<double>(k)
                                               : static_cast<double>(k) - static_cast<double>(n_y);
    return 2.0 * std::numbers::pi * kk / period;
}

double y_wavenumber_squared(std::size_t k, std::size_t n_y, double period) {
    if (2 * k == n_y) {
        const double kn = std::numbers::pi * static_cast<double>(n_y) / period;
        return kn * kn;
    }
    const double kappa = y_wavenumber(k, n_y, period);
    return kappa * kappa;
}

void fft_rows_forward(cplx* data, std::size_t n_rows, std::size_t n_y) {
    run(data, n_rows, n_y, FFTW_FORWARD);
}

void fft_rows_backward(cplx* data, std::size_t n_rows, std::size_t n_y) {
    run(data, n_rows, n_y, FFTW_BACKWARD);
}

std::vector<cplx> y_derivative(const std::vector<cplx>& values, std::size_t n_x, std::size_t n_y,
                               double period) {
    std::vector<cplx> out = values;
    fft_rows_forward(out.data(), n_x, n_y);
    const double norm = 1.0 / static_cast<double>(n_y);
    for (std::size_t k = 0; k < n_y; ++k) {
        const cplx factor(0.0, y_wavenumber(k, n_y, period) * norm);
        for (std::size_t i = 0; i < n_x; ++i) out[i * n_y + k] *= factor;
    }
    fft_rows_backward(out.data(), n_x, n_y);
    return out;
}

std::vector<cplx> y_laplacian_negative(const std::vector<cplx>& values, std::size_t n_x,
                                       std::size_t n_y, double period) {
    std::vector<cplx> out = values;
    fft_rows_forward(out.data(), n_x, n_y);
    const double norm = 1.0 / static_cast<double>(n_y);
    for (std::size_t k = 0; k < n_y; ++k) {
        const double factor = y_wavenumber_squared(k, n_y, period) * norm;
        for (std::size_t i = 0; i < n_x; ++i) out[i * n_y + k] *= factor;
    }
    fft_rows_backward(out.data(), n_x, n_y);
    return out;
}

std::vector<double> periodic_derivative(const std::vector<double>& values, double period) {
    const std::size_t n = values.size();
    std::vector<cplx> buf(values.begin(), values.end());
    const auto d = y_derivative(buf, 1, n, period);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = d[j].real();
    return out;
}

}  // namespace gpcyl
