#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <vector>

#include "wsnx/error.hpp"
#include "wsnx/kernels.hpp"
#include "wsnx/rng.hpp"

namespace k = wsnx::kernels;

namespace {

std::vector<double> random_values(wsnx::Rng& rng, std::size_t n) {
    std::vector<double> x(n);
    for (auto& v : x) v = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<double>(rng.below(7)) - 3.0);
    return x;
}

std::vector<const k::KernelTable*> simd_tables() {
    std::vector<const k::KernelTable*> out;
    for (auto isa : {k::Isa::Avx2, k::Isa::Neon}) {
        if (const auto* t = k::table_for(isa)) out.push_back(t);
    }
    return out;
}

}  // namespace

TEST(Kernels, ScalarSumFollowsLaneOrder) {
    const std::vector<double> x{1e16, 1.0, -1e16, 1.0, 3.0, 0.5};
    double l[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i + 4 <= x.size(); i += 4) {
        for (int j = 0; j < 4; ++j) l[j] += x[i + j];
    }
    double expected = (l[0] + l[1]) + (l[2] + l[3]);
    for (std::size_t i = x.size() / 4 * 4; i < x.size(); ++i) expected += x[i];
    EXPECT_EQ(k::scalar::sum(x.data(), x.size()), expected);
    EXPECT_EQ(k::scalar::sum(x.data(), 0), 0.0);
}

TEST(Kernels, ScalarAbsDiffAndCount) {
    const std::vector<double> x{1.0, 3.0, 2.5, 2.5, -1.0};
    std::vector<double> out(4);
    k::scalar::abs_diff(x.data(), x.size(), out.data());
    EXPECT_EQ(out, (std::vector<double>{2.0, 0.5, 0.0, 3.5}));
    EXPECT_EQ(k::scalar::count_greater(out.data(), out.size(), 0.5), 2u);
    EXPECT_EQ(k::scalar::count_greater(out.data(), out.size(), -1.0), 4u);
}

TEST(Kernels, AbsDiffRejectsSizeMismatch) {
    std::vector<double> x(5), out(5);
    EXPECT_THROW(k::abs_diff(x, out), wsnx::Error);
    std::vector<double> none;
    EXPECT_NO_THROW(k::abs_diff(none, none));
}

TEST(Kernels, ActiveTableIsSupported) {
    const auto& t = k::active();
    EXPECT_NE(k::table_for(t.isa), nullptr);
    EXPECT_EQ(k::table_for(k::Isa::Scalar), &k::scalar_table());
}

TEST(Kernels, SimdVariantsAreBitIdenticalToScalar) {
    const auto tables = simd_tables();
    if (tables.empty()) GTEST_SKIP() << "no SIMD variant on this CPU";
    wsnx::Rng rng(99);
    const auto& ref = k::scalar_table();
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = rng.below(70);
        const auto x = random_values(rng, n);
        const double threshold = n > 0 ? x[rng.below(n)] : 0.0;
        std::vector<double> want(n > 0 ? n - 1 : 0), got(want.size());
        if (n > 0) ref.abs_diff(x.data(), n, want.data());
        for (const auto* t : tables) {
            SCOPED_TRACE(std::string(k::to_string(t->isa)) + " n=" + std::to_string(n));
            EXPECT_EQ(std::bit_cast<std::uint64_t>(t->sum(x.data(), n)),
                      std::bit_cast<std::uint64_t>(ref.sum(x.data(), n)));
            if (n > 0) {
                t->abs_diff(x.data(), n, got.data());
                for (std::size_t i = 0; i < got.size(); ++i) {
                    ASSERT_EQ(std::bit_cast<std::uint64_t>(got[i]), std::bit_cast<std::uint64_t>(want[i]));
                }
            }
            EXPECT_EQ(t->count_greater(x.data(), n, threshold), ref.count_greater(x.data(), n, threshold));
        }
    }
}

TEST(Kernels, SimdHandlesSpecialValues) {
    const auto tables = simd_tables();
    if (tables.empty()) GTEST_SKIP() << "no SIMD variant on this CPU";
    const std::vector<double> x{-0.0, 0.0, NAN, 1.0, -INFINITY, 2.0, 2.0};
    for (const auto* t : tables) {
        EXPECT_EQ(t->count_greater(x.data(), x.size(), 1.0), k::scalar::count_greater(x.data(), x.size(), 1.0));
        std::vector<double> a(x.size() - 1), b(x.size() - 1);
        t->abs_diff(x.data(), x.size(), a.data());
        k::scalar::abs_diff(x.data(), x.size(), b.data());
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(std::bit_cast<std::uint64_t>(a[i]), std::bit_cast<std::uint64_t>(b[i])) << i;
        }
    }
}
