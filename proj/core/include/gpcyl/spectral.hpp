#pragma once

/// Spectral operations along the periodic y direction of x-major arrays.
/// Rows of length n_y are contiguous.  The Nyquist mode is excluded from the first
/// derivative but kept in -d^2/dy^2, so that no nonzero mode has zero y-energy.

#include <complex>
#include <cstddef>
#include <vector>

namespace gpcyl {

using cplx = std::complex<double>;

/// Signed angular wavenumber of FFT bin k for period L (0 at Nyquist).
double y_wavenumber(std::size_t k, std::size_t n_y, double period);

/// Symbol of -d^2/dy^2 for FFT bin k, (pi n_y / L)^2 at Nyquist.
double y_wavenumber_squared(std::size_t k, std::size_t n_y, double period);

/// In-place unnormalized DFT of n_rows contiguous rows of length n_y.
void fft_rows_forward(cplx* data, std::size_t n_rows, std::size_t n_y);
/// In-place unnormalized inverse DFT.
void fft_rows_backward(cplx* data, std::size_t n_rows, std::size_t n_y);

/// Spectral d/dy of every row.
std::vector<cplx> y_derivative(const std::vector<cplx>& values, std::size_t n_x,
                               std::size_t n_y, double period);
/// -d^2/dy^2 with symbol y_wavenumber_squared.
std::vector<cplx> y_laplacian_negative(const std::vector<cplx>& values, std::size_t n_x,
                                       std::size_t n_y, double period);
/// Spectral d/dy of a single real periodic sequence.
std::vector<double> periodic_derivative(const std::vector<double>& values, double period);

}  // namespace gpcyl
