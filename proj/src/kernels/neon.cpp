#include "kernels_internal.hpp"

#if WSNX_HAVE_NEON

#include <arm_neon.h>

#include <cmath>

namespace wsnx::kernels::neon {

// Two 2-wide accumulators stand in for the four reference lanes.
double sum(const double* x, std::size_t n) noexcept {
    float64x2_t lo = vdupq_n_f64(0.0);
    float64x2_t hi = vdupq_n_f64(0.0);
    const std::size_t body = n - n % 4;
    for (std::size_t i = 0; i < body; i += 4) {
        lo = vaddq_f64(lo, vld1q_f64(x + i));
        hi = vaddq_f64(hi, vld1q_f64(x + i + 2));
    }
    double total = (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) +
                   (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
    for (std::size_t i = body; i < n; ++i) total += x[i];
    return total;
}

void abs_diff(const double* x, std::size_t n, double* out) noexcept {
    if (n < 2) return;
    const std::size_t m = n - 1;
    std::size_t i = 0;
    for (; i + 2 <= m; i += 2) {
        vst1q_f64(out + i, vabsq_f64(vsubq_f64(vld1q_f64(x + i + 1), vld1q_f64(x + i))));
    }
    for (; i < m; ++i) out[i] = std::fabs(x[i + 1] - x[i]);
}

std::size_t count_greater(const double* x, std::size_t n, double threshold) noexcept {
    const float64x2_t t = vdupq_n_f64(threshold);
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const uint64x2_t gt = vcgtq_f64(vld1q_f64(x + i), t);
        count += (vgetq_lane_u64(gt, 0) & 1u) + (vgetq_lane_u64(gt, 1) & 1u);
    }
    for (; i < n; ++i) count += x[i] > threshold ? 1 : 0;
    return count;
}

}  // namespace wsnx::kernels::neon

#endif
