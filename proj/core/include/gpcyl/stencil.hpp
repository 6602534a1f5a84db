#pragma once

/// First-derivative operators with diagonal quadrature satisfying summation by parts:
///   sum_i w_i (D f)_i g_i + sum_i w_i f_i (D g)_i = f_{n-1} g_{n-1} - f_0 g_0.
/// Order 2 uses trapezoid weights with one-sided boundary rows; order 4 is the
/// classical 4-2 diagonal-norm closure.  Interior rows are centered differences.

#include <complex>
#include <cstddef>
#include <vector>

namespace gpcyl {

class SbpOperator {
public:
    SbpOperator(int order, std::size_t n);

    int order() const { return order_; }
    std::size_t size() const { return n_; }
    /// Smallest grid size the closure supports.
    static std::size_t min_size(int order);

    /// Quadrature weight of node i for unit spacing (multiply by dx).
    double weight(std::size_t i) const;
    std::vector<double> weights(double dx) const;

    /// Nonzero entries (column, coefficient) of row i for unit spacing.
    template <class Fn>
    void for_each_in_row(std::size_t i, Fn&& fn) const;

    /// out = D in, applied to `block` interleaved columns (x is the slow index).
    template <class T>
    void apply(const T* in, T* out, std::size_t block, double dx) const;
    /// out = D^T in.
    template <class T>
    void apply_transpose(const T* in, T* out, std::size_t block, double dx) const;

    template <class T>
    std::vector<T> apply(const std::vector<T>& in, double dx) const {
        std::vector<T> out(in.size());
        apply(in.data(), out.data(), 1, dx);
        return out;
    }

private:
    int order_;
    std::size_t n_;
    std::vector<double> interior_;               // a_1..a_m for offsets +k (offset -k gets -a_k)
    std::vector<std::vector<double>> boundary_;  // left closure rows, columns from 0
    std::vector<double> boundary_weights_;
};

template <class Fn>
void SbpOperator::for_each_in_row(std::size_t i, Fn&& fn) const {
    const std::size_t r = boundary_.size();
    if (i < r) {
        const auto& row = boundary_[i];
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] != 0.0) fn(j, row[j]);
        }
        return;
    }
    if (i >= n_ - r) {
        const std::size_t ii = n_ - 1 - i;
        const auto& row = boundary_[ii];
        for (std::size_t j = row.size(); j-- > 0;) {
            if (row[j] != 0.0) fn(n_ - 1 - j, -row[j]);
        }
        return;
    }
    const std::size_t m = interior_.size();
    for (std::size_t k = m; k >= 1; --k) fn(i - k, -interior_[k - 1]);
    for (std::size_t k = 1; k <= m; ++k) fn(i + k, interior_[k - 1]);
}

template <class T>
void SbpOperator::apply(const T* in, T* out, std::size_t block, double dx) const {
    const double inv = 1.0 / dx;
    for (std::size_t i = 0; i < n_; ++i) {
        T* o = out + i * block;
        for (std::size_t b = 0; b < block; ++b) o[b] = T{};
        for_each_in_row(i, [&](std::size_t j, double a) {
            const T* src = in + j * block;
            const double s = a * inv;
            for (std::size_t b = 0; b < block; ++b) o[b] += s * src[b];
        });
    }
}

template <class T>
void SbpOperator::apply_transpose(const T* in, T* out, std::size_t block, double dx) const {
    const double inv = 1.0 / dx;
    for (std::size_t k = 0; k < n_ * block; ++k) out[k] = T{};
    for (std::size_t i = 0; i < n_; ++i) {
        const T* src = in + i * block;
        for_each_in_row(i, [&](std::size_t j, double a) {
            T* o = out + j * block;
            const double s = a * inv;
            for (std::size_t b = 0; b < block; ++b) o[b] += s * src[b];
        });
    }
}

}  // namespace gpcyl
