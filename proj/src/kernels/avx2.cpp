// Compiled with -mavx2; only entered after a runtime CPU check.
#include "kernels_internal.hpp"

#if WSNX_HAVE_AVX2

#include <immintrin.h>

#include <bit>
#include <cmath>

namespace wsnx::kernels::avx2 {

double sum(const double* x, std::size_t n) noexcept {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t body = n - n % 4;
    for (std::size_t i = 0; i < body; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (std::size_t i = body; i < n; ++i) total += x[i];
    return total;
}

void abs_diff(const double* x, std::size_t n, double* out) noexcept {
    if (n < 2) return;
    const std::size_t m = n - 1;
    const __m256d sign = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        const __m256d a = _mm256_loadu_pd(x + i);
        const __m256d b = _mm256_loadu_pd(x + i + 1);
        _mm256_storeu_pd(out + i, _mm256_andnot_pd(sign, _mm256_sub_pd(b, a)));
    }
    for (; i < m; ++i) out[i] = std::fabs(x[i + 1] - x[i]);
}

std::size_t count_greater(const double* x, std::size_t n, double threshold) noexcept {
    const __m256d t = _mm256_set1_pd(threshold);
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d gt = _mm256_cmp_pd(_mm256_loadu_pd(x + i), t, _CMP_GT_OQ);
        count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(_mm256_movemask_pd(gt))));
    }
    for (; i < n; ++i) count += x[i] > threshold ? 1 : 0;
    return count;
}

}  // namespace wsnx::kernels::avx2

#endif
