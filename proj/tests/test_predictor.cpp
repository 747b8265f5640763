#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "wsnx/error.hpp"
#include "wsnx/predictor.hpp"

using namespace wsnx;

using oracle::kL;
using oracle::kM;
using oracle::kP;

constexpr auto L = kL;
constexpr auto P = kP;
constexpr auto M = kM;

TEST(Predictor, AllTriplesMatchHandTable) {
    for (const auto& e : oracle::kPredictorTable) {
        EXPECT_EQ(predict(e.newer, e.older, e.last), e.expected)
            << to_string(e.newer) << ' ' << to_string(e.older) << ' ' << to_string(e.last);
    }
}

TEST(Predictor, ListedRowsReproduced) {
    const auto rows = reaction_rows();
    ASSERT_EQ(rows.size(), 9u);
    const std::array<DeltaLabel, 3> all{L, P, M};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        // every concrete triple the row covers
        for (auto n : all) {
            for (auto o : all) {
                for (auto l : all) {
                    if ((r.newer && *r.newer != n) || (r.older && *r.older != o) ||
                        (r.last_prediction && *r.last_prediction != l)) {
                        continue;
                    }
                    if (matching_row(n, o, l) == i) EXPECT_EQ(predict(n, o, l), r.prediction);
                }
            }
        }
    }
    for (std::size_t i = 0; i < oracle::kListedRows.size(); ++i) {
        const auto& e = oracle::kListedRows[i];
        EXPECT_EQ(matching_row(e.newer, e.older, e.last), i);
        EXPECT_EQ(predict(e.newer, e.older, e.last), e.expected) << "row " << i + 1;
        EXPECT_EQ(rows[i].prediction, e.expected);
    }
}

TEST(Predictor, RowsNeverConflict) {
    // any later row that also matches a triple agrees with the first match
    const auto rows = reaction_rows();
    for (const auto& e : oracle::kPredictorTable) {
        for (const auto& r : rows) {
            const bool hit = (!r.newer || *r.newer == e.newer) && (!r.older || *r.older == e.older) &&
                             (!r.last_prediction || *r.last_prediction == e.last);
            if (hit) EXPECT_EQ(r.prediction, e.expected);
        }
    }
}

TEST(Predictor, StepShiftsState) {
    PredictorState s{Metric::Temperature};
    auto [s1, p1] = step(s, P);
    EXPECT_EQ(p1.label, L);  // (P, L, L)
    EXPECT_EQ(p1.metric, Metric::Temperature);
    EXPECT_EQ(s1.newer, P);
    EXPECT_EQ(s1.older, L);
    auto [s2, p2] = step(s1, P);
    EXPECT_EQ(p2.label, P);
    EXPECT_EQ(s2.older, P);
    EXPECT_EQ(s2.last_prediction, P);
    auto [s3, p3] = step(s2, L);
    EXPECT_EQ(p3.label, P);  // (L, P, P) by agreement
    auto [s4, p4] = step(s3, L);
    EXPECT_EQ(p4.label, L);
}

TEST(Predictor, Combine) {
    const std::array<Prediction, 2> a{Prediction{L, Metric::Temperature}, Prediction{P, Metric::RelativeHumidity}};
    EXPECT_EQ(combine(a), CombinedLabel::High);
    const std::array<Prediction, 2> b{Prediction{L, Metric::Temperature}, Prediction{L, Metric::RelativeHumidity}};
    EXPECT_EQ(combine(b), CombinedLabel::Low);
    const std::array<Prediction, 1> c{Prediction{M, Metric::Temperature}};
    EXPECT_EQ(combine(c), CombinedLabel::High);
    EXPECT_THROW(combine(std::span<const Prediction>{}), Error);
}

TEST(Predictor, CombineIsOrderInvariant) {
    const std::array<DeltaLabel, 3> all{L, P, M};
    for (auto a : all) {
        for (auto b : all) {
            for (auto c : all) {
                std::array<Prediction, 3> v{Prediction{a}, Prediction{b}, Prediction{c}};
                const auto want = combine(v);
                std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.label < y.label; });
                do {
                    EXPECT_EQ(combine(v), want);
                } while (std::next_permutation(v.begin(), v.end(),
                                               [](const auto& x, const auto& y) { return x.label < y.label; }));
            }
        }
    }
}

TEST(Predictor, DocumentedTableIsCurrent) {
    std::ifstream in(WSNX_SOURCE_DIR "/docs/predictor_table.csv");
    ASSERT_TRUE(in) << "docs/predictor_table.csv missing";
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), resolved_table_csv());
}
