#include "kernels_internal.hpp"

#include <cstdlib>
#include <cstring>

#include "wsnx/error.hpp"

namespace wsnx::kernels {

namespace {

constexpr KernelTable kScalar{Isa::Scalar, scalar::sum, scalar::abs_diff, scalar::count_greater};

#if WSNX_HAVE_AVX2
constexpr KernelTable kAvx2{Isa::Avx2, avx2::sum, avx2::abs_diff, avx2::count_greater};
#endif

#if WSNX_HAVE_NEON
constexpr KernelTable kNeon{Isa::Neon, neon::sum, neon::abs_diff, neon::count_greater};
#endif

bool force_scalar() noexcept {
    const char* v = std::getenv("WSNX_FORCE_SCALAR");
    return v != nullptr && std::strcmp(v, "") != 0 && std::strcmp(v, "0") != 0;
}

const KernelTable& select() noexcept {
    if (force_scalar()) return kScalar;
    if (const auto* t = table_for(Isa::Avx2)) return *t;
    if (const auto* t = table_for(Isa::Neon)) return *t;
    return kScalar;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* table_for(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar:
            return &kScalar;
        case Isa::Avx2:
#if WSNX_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
            if (__builtin_cpu_supports("avx2")) return &kAvx2;
#endif
            return nullptr;
        case Isa::Neon:
#if WSNX_HAVE_NEON
            return &kNeon;  // mandatory on AArch64
#else
            return nullptr;
#endif
    }
    return nullptr;
}

const KernelTable& active() noexcept {
    static const KernelTable& table = select();
    return table;
}

void abs_diff(std::span<const double> x, std::span<double> out) {
    if (x.empty() && out.empty()) return;
    if (out.size() + 1 != x.size()) {
        throw Error(Errc::InvalidParams, "abs_diff output must be one shorter than input");
    }
    active().abs_diff(x.data(), x.size(), out.data());
}

}  // namespace wsnx::kernels
