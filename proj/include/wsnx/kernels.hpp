#pragma once
// Numeric inner loops shared by the window/delta pipeline and the simulator.
//
// Every kernel has a scalar reference and optional AVX2 / NEON variants. The
// variants are required to be bit-identical to the reference, so reductions
// use a fixed 4-lane order:
//
//   lane j accumulates x[4k + j];  result = (l0 + l1) + (l2 + l3);
//   the n % 4 tail is then added left to right.
//
// This keeps simulation output independent of the host CPU.

#include <cstddef>
#include <span>
#include <string_view>

namespace wsnx::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
    Isa isa;
    double (*sum)(const double* x, std::size_t n);
    // out[i] = |x[i + 1] - x[i]| for i in [0, n - 1)
    void (*abs_diff)(const double* x, std::size_t n, double* out);
    std::size_t (*count_greater)(const double* x, std::size_t n, double threshold);
};

const KernelTable& scalar_table() noexcept;

/// Table for `isa` if compiled in and supported by this CPU, else nullptr.
const KernelTable* table_for(Isa isa) noexcept;

/// Best supported table; WSNX_FORCE_SCALAR=1 in the environment pins scalar.
const KernelTable& active() noexcept;

inline double sum(std::span<const double> x) noexcept {
    return active().sum(x.data(), x.size());
}

/// Requires out.size() + 1 == x.size() (or both empty).
void abs_diff(std::span<const double> x, std::span<double> out);

inline std::size_t count_greater(std::span<const double> x, double threshold) noexcept {
    return active().count_greater(x.data(), x.size(), threshold);
}

namespace scalar {
double sum(const double* x, std::size_t n) noexcept;
void abs_diff(const double* x, std::size_t n, double* out) noexcept;
std::size_t count_greater(const double* x, std::size_t n, double threshold) noexcept;
}  // namespace scalar

}  // namespace wsnx::kernels
