#include "wsnx/kernels.hpp"

#include <cmath>

namespace wsnx::kernels::scalar {

double sum(const double* x, std::size_t n) noexcept {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t body = n - n % 4;
    for (std::size_t i = 0; i < body; i += 4) {
        lane[0] += x[i];
        lane[1] += x[i + 1];
        lane[2] += x[i + 2];
        lane[3] += x[i + 3];
    }
    double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (std::size_t i = body; i < n; ++i) total += x[i];
    return total;
}

void abs_diff(const double* x, std::size_t n, double* out) noexcept {
    for (std::size_t i = 0; i + 1 < n; ++i) out[i] = std::fabs(x[i + 1] - x[i]);
}

std::size_t count_greater(const double* x, std::size_t n, double threshold) noexcept {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) count += x[i] > threshold ? 1 : 0;
    return count;
}

}  // namespace wsnx::kernels::scalar
