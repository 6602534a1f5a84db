#include "gpcyl/stencil.hpp"

#include <string>

#include "gpcyl/errors.hpp"

namespace gpcyl {

std::size_t SbpOperator::min_size(int order) { return order == 2 ? 3 : 10; }

SbpOperator::SbpOperator(int order, std::size_t n) : order_(order), n_(n) {
    if (order == 2) {
        interior_ = {0.5};
        boundary_ = {{-1.0, 1.0}};
        boundary_weights_ = {0.5};
    } else if (order == 4) {
        interior_ = {2.0 / 3.0, -1.0 / 12.0};
        boundary_ = {
            {-24.0 / 17.0, 59.0 / 34.0, -4.0 / 17.0, -3.0 / 34.0, 0.0, 0.0},
            {-0.5, 0.0, 0.5, 0.0, 0.0, 0.0},
            {4.0 / 43.0, -59.0 / 86.0, 0.0, 59.0 / 86.0, -4.0 / 43.0, 0.0},
            {3.0 / 98.0, 0.0, -59.0 / 98.0, 0.0, 32.0 / 49.0, -4.0 / 49.0},
        };
        boundary_weights_ = {17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0, 49.0 / 48.0};
    } else {
        throw std::invalid_argument("SbpOperator: supported orders are 2 and 4, got " +
                                    std::to_string(order));
    }
    if (n < min_size(order)) {
        throw std::invalid_argument("SbpOperator: grid too small for order " +
                                    std::to_string(order));
    }
}

double SbpOperator::weight(std::size_t i) const {
    const std::size_t r = boundary_weights_.size();
    if (i < r) return boundary_weights_[i];
    if (i >= n_ - r) return boundary_weights_[n_ - 1 - i];
    return 1.0;
}

std::vector<double> SbpOperator::weights(double dx) const {
    std::vector<double> w(n_);
    for (std::size_t i = 0; i < n_; ++i) w[i] = weight(i) * dx;
    return w;
}

}  // namespace gpcyl
