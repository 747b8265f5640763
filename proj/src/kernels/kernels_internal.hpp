#pragma once

#include "wsnx/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define WSNX_HAVE_AVX2 1
#else
#define WSNX_HAVE_AVX2 0
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
#define WSNX_HAVE_NEON 1
#else
#define WSNX_HAVE_NEON 0
#endif

namespace wsnx::kernels {

#if WSNX_HAVE_AVX2
namespace avx2 {
double sum(const double* x, std::size_t n) noexcept;
void abs_diff(const double* x, std::size_t n, double* out) noexcept;
std::size_t count_greater(const double* x, std::size_t n, double threshold) noexcept;
}  // namespace avx2
#endif

#if WSNX_HAVE_NEON
namespace neon {
double sum(const double* x, std::size_t n) noexcept;
void abs_diff(const double* x, std::size_t n, double* out) noexcept;
std::size_t count_greater(const double* x, std::size_t n, double threshold) noexcept;
}  // namespace neon
#endif

}  // namespace wsnx::kernels
