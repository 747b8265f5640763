#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "constructed.hpp"
#include "support.hpp"
#include "wsnx/error.hpp"
#include "wsnx/evaluation.hpp"
#include "wsnx/rng.hpp"

using namespace wsnx;

namespace {

Errc error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error";
    return Errc::Io;
}

IntervalRecord record(bool high_true, bool high_plan) {
    IntervalRecord r;
    r.true_label = high_true ? DeltaLabel::HighMinus : DeltaLabel::Low;
    r.plan = high_plan ? PlanKind::FastInterval : PlanKind::HalfSetB;
    return r;
}

std::vector<IntervalRecord> random_log(Rng& rng, std::size_t n) {
    std::vector<IntervalRecord> log;
    for (std::size_t i = 0; i < n; ++i) {
        IntervalRecord r;
        r.true_label = static_cast<DeltaLabel>(rng.below(3));
        r.plan = static_cast<PlanKind>(rng.below(5));
        log.push_back(r);
    }
    return log;
}

CalibrationOptions quick_options(InfoSource source, int step = 30) {
    CalibrationOptions o;
    o.grid.step = step;
    o.source = source;
    return o;
}

}  // namespace

TEST(EnergySaved, Boundaries) {
    EXPECT_EQ(energy_saved(100, 50, 100), 0.0);
    EXPECT_EQ(energy_saved(50, 50, 100), 1.0);
    EXPECT_EQ(energy_saved(75, 50, 100), 0.5);
    EXPECT_EQ(error_of([] { energy_saved(60, 100, 100); }), Errc::DegenerateRange);
    EXPECT_EQ(error_of([] { energy_saved(60, 100, 50); }), Errc::DegenerateRange);
    EXPECT_EQ(error_of([] { energy_saved(101, 50, 100); }), Errc::OutOfRange);
    EXPECT_EQ(error_of([] { energy_saved(49, 50, 100); }), Errc::OutOfRange);
    EXPECT_EQ(energy_saved(100 + 1e-12, 50, 100), 0.0);  // rounding noise is tolerated
}

TEST(EnergySaved, ScaleInvariant) {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double lo = rng.uniform() * 100, hi = lo + 1 + rng.uniform() * 100;
        const double e = lo + rng.uniform() * (hi - lo);
        const double c = 0.01 + rng.uniform() * 100;
        EXPECT_NEAR(energy_saved(e * c, lo * c, hi * c), energy_saved(e, lo, hi), 1e-12);
    }
}

TEST(Recall, Examples) {
    const std::vector<IntervalRecord> all{record(true, true), record(false, false), record(true, true)};
    EXPECT_EQ(high_delta_recall(all), 1.0);
    const std::vector<IntervalRecord> none{record(true, false), record(false, false)};
    EXPECT_EQ(high_delta_recall(none), 0.0);
    const std::vector<IntervalRecord> no_high{record(false, true)};
    EXPECT_EQ(error_of([&] { high_delta_recall(no_high); }), Errc::NoHighIntervals);
}

TEST(Recall, AlwaysLowBaselineIsZero) {
    const auto data = fixtures::small_dataset(2, 5, 12);
    const DayContext day(data.days[0], {});
    const auto theta = percentile_threshold(day.humidity().deltas, 60);
    const auto run = run_day(day, baseline_config(Approach::NodeSets, Strategy::AlwaysLow), theta, {});
    EXPECT_EQ(high_delta_recall(run.records), 0.0);
}

TEST(Qom, Examples) {
    // always-High on a day where 30 % of windows are HighDelta
    std::vector<IntervalRecord> log;
    for (int i = 0; i < 100; ++i) log.push_back(record(i < 30, true));
    EXPECT_DOUBLE_EQ(qom_accuracy(log), 0.30);
    EXPECT_EQ(qom_good_fraction(log), 1.0);
    std::vector<IntervalRecord> perfect;
    for (int i = 0; i < 10; ++i) perfect.push_back(record(i % 3 == 0, i % 3 == 0));
    EXPECT_EQ(qom_accuracy(perfect), 1.0);
    EXPECT_EQ(error_of([] { qom_accuracy({}); }), Errc::EmptyInput);
}

TEST(Formulas, CountingOracles) {
    Rng rng(2);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto log = random_log(rng, 1 + rng.below(300));
        std::size_t th_hp = 0, th_lp = 0, tl_hp = 0, tl_lp = 0;
        for (const auto& r : log) {
            const bool t = r.true_label != DeltaLabel::Low;
            const bool p = r.plan == PlanKind::AllNodes || r.plan == PlanKind::FastInterval;
            (t ? (p ? th_hp : th_lp) : (p ? tl_hp : tl_lp)) += 1;
        }
        const double n = static_cast<double>(log.size());
        EXPECT_EQ(qom_accuracy(log), static_cast<double>(th_hp + tl_lp) / n);
        EXPECT_EQ(qom_good_fraction(log), static_cast<double>(n - th_lp) / n);
        if (th_hp + th_lp > 0) {
            EXPECT_EQ(high_delta_recall(log), static_cast<double>(th_hp) / static_cast<double>(th_hp + th_lp));
        } else {
            EXPECT_THROW(high_delta_recall(log), Error);
        }
    }
}

TEST(PerformanceScore, Boundaries) {
    EXPECT_EQ(performance_score(0.0, 0.7, 0.5), 0.0);
    EXPECT_EQ(performance_score(0.7, 0.0, 0.5), 0.0);
    EXPECT_DOUBLE_EQ(performance_score(0.25, 0.25, 0.5), 0.25);
    EXPECT_EQ(performance_score(0.3, 0.0, 1.0), 0.3);  // 0^0 = 1
    EXPECT_EQ(performance_score(0.0, 0.3, 0.0), 0.3);
    EXPECT_EQ(error_of([] { performance_score(0.5, 0.5, 1.5); }), Errc::InvalidParams);
    EXPECT_EQ(error_of([] { performance_score(1.1, 0.5, 0.5); }), Errc::InvalidParams);
}

TEST(PerformanceScore, MatchesLogOracle) {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double e = rng.uniform(), p = rng.uniform(), a = rng.uniform();
        const double oracle = std::exp(a * std::log(e) + (1 - a) * std::log(p));
        EXPECT_NEAR(performance_score(e, p, a), oracle, 1e-14);
        EXPECT_LE(performance_score(e, p, a), std::max(e, p) + 1e-15);
        EXPECT_GE(performance_score(e, p, a), std::min(e, p) - 1e-15);
    }
}

TEST(Scores, AggregateRecomputesP) {
    Scores a, b;
    a.e_ps = 0.4;
    a.p_high = 0.9;
    b.e_ps = 0.6;  // no HighDelta that day
    a.accuracy = 0.5;
    b.accuracy = 0.7;
    const std::vector<Scores> days{a, b};
    const auto agg = aggregate_scores(days, 0.5);
    EXPECT_DOUBLE_EQ(agg.e_ps, 0.5);
    EXPECT_EQ(agg.p_high, 0.9);
    EXPECT_DOUBLE_EQ(*agg.p, std::sqrt(0.5 * 0.9));
    EXPECT_DOUBLE_EQ(agg.accuracy, 0.6);
    EXPECT_THROW(aggregate_scores({}, 0.5), Error);
}

TEST(Scores, BaselinesScoreZero) {
    const auto days = fixtures::contexts(fixtures::small_dataset(2, 6, 12));
    for (auto approach : {Approach::NodeSets, Approach::Intervals}) {
        for (const auto& day : days) {
            const auto theta = percentile_threshold(day.humidity().deltas, 60);
            const auto range = min_max_energy(day, approach, {});
            for (auto strategy : {Strategy::AlwaysLow, Strategy::AlwaysHigh}) {
                const auto s = score_day(run_day(day, baseline_config(approach, strategy), theta, {}), range, 0.5);
                ASSERT_TRUE(s.p.has_value());
                EXPECT_EQ(*s.p, 0.0);
                EXPECT_EQ(s.e_ps, strategy == Strategy::AlwaysLow ? 1.0 : 0.0);
            }
        }
    }
}

TEST(Scores, EnergyScaleInvariance) {
    const auto days = fixtures::contexts(fixtures::small_dataset(2, 7, 12));
    const auto& day = days[0];
    const auto theta = percentile_threshold(day.humidity().deltas, 60);
    GatewayConfig c;
    c.sigma_internal = percentile_threshold(day.humidity().deltas, 50);
    c.sigma_external = percentile_threshold(day.temperature().deltas, 50);
    SimulationSettings scaled;
    scaled.energy = SimulationSettings{}.energy.scaled(3.5);
    const auto s1 = score_day(run_day(day, c, theta, {}), min_max_energy(day, c.approach, {}), 0.5);
    const auto s2 = score_day(run_day(day, c, theta, scaled), min_max_energy(day, c.approach, scaled), 0.5);
    EXPECT_NEAR(s1.e_ps, s2.e_ps, 1e-12);
    EXPECT_EQ(s1.p_high, s2.p_high);
    EXPECT_NEAR(s2.energy_j, 3.5 * s1.energy_j, 1e-9 * s2.energy_j);
}

TEST(Grid, Percentiles) {
    EXPECT_EQ(GridSpec{}.percentiles(), (std::vector<int>{0, 10, 20, 30, 40, 50, 60, 70, 80, 90}));
    EXPECT_THROW((GridSpec{0, 90, 0}.percentiles()), Error);
    EXPECT_THROW((GridSpec{50, 40, 10}.percentiles()), Error);
}

TEST(Calibrate, FullGridHasHundredCells) {
    const auto days = fixtures::contexts(fixtures::small_dataset(2, 8, 12));
    CalibrationOptions o;
    const auto result = calibrate(std::span<const DayContext>(days), o);
    EXPECT_EQ(result.grid.size(), 100u);
    std::set<std::pair<int, int>> seen;
    for (const auto& c : result.grid) seen.insert({*c.sigma_rh_percentile, *c.sigma_t_percentile});
    EXPECT_EQ(seen.size(), 100u);
}

TEST(Calibrate, BestIsArgmaxWithTieBreak) {
    const auto days = fixtures::contexts(fixtures::small_dataset(2, 9, 12));
    const auto result = calibrate(std::span<const DayContext>(days), quick_options(InfoSource::Combined));
    double best = -1.0;
    for (const auto& c : result.grid) best = std::max(best, c.scores.p.value_or(-1.0));
    EXPECT_EQ(result.best.scores.p.value_or(-1.0), best);
    for (const auto& c : result.grid) {
        if (c.scores.p.value_or(-1.0) != best) continue;
        EXPECT_LE(*c.sigma_rh_percentile, *result.best.sigma_rh_percentile);
        if (c.sigma_rh_percentile == result.best.sigma_rh_percentile) {
            EXPECT_LE(*c.sigma_t_percentile, *result.best.sigma_t_percentile);
        }
    }
    ASSERT_TRUE(result.sigma_rh && result.sigma_t);
    EXPECT_EQ(result.sigma_rh->percentile, *result.best.sigma_rh_percentile);
}

TEST(Calibrate, OneDimensionalSources) {
    const auto days = fixtures::contexts(fixtures::small_dataset(2, 10, 12));
    const auto internal = calibrate(std::span<const DayContext>(days), quick_options(InfoSource::Internal));
    EXPECT_EQ(internal.grid.size(), 4u);
    EXPECT_FALSE(internal.best.sigma_t_percentile.has_value());
    EXPECT_FALSE(internal.sigma_t.has_value());
    const auto external = calibrate(std::span<const DayContext>(days), quick_options(InfoSource::External));
    EXPECT_FALSE(external.best.sigma_rh_percentile.has_value());
}

TEST(Calibrate, NeedsTwoDays) {
    const auto days = fixtures::contexts(fixtures::small_dataset(2, 11, 12));
    EXPECT_EQ(error_of([&] { calibrate(std::span<const DayContext>(days.data(), 1), CalibrationOptions{}); }),
              Errc::EmptyTraining);
}

TEST(Calibrate, PrecursorDatasetFavoursTemperature) {
    const auto days = fixtures::contexts(fixtures::precursor_dataset(2));
    std::vector<const DayContext*> ptrs{&days[0], &days[1]};
    EXPECT_EQ(pooled_threshold(ptrs, Metric::Temperature, 40).value, 0.0);
    EXPECT_GE(pooled_threshold(ptrs, Metric::Temperature, 50).value, 1.0);
    EXPECT_EQ(pooled_threshold(ptrs, Metric::RelativeHumidity, 75).value, 0.0);

    CalibrationOptions o;
    o.theta_percentile = 75;
    const auto combined = calibrate(std::span<const DayContext>(days), o);
    EXPECT_LE(*combined.best.sigma_t_percentile, 40);
    EXPECT_EQ(combined.best.scores.p_high, 1.0);
    o.source = InfoSource::Internal;
    const auto internal = calibrate(std::span<const DayContext>(days), o);
    EXPECT_GT(*combined.best.scores.p, *internal.best.scores.p);
}

TEST(CrossValidation, RandomHalvesAreDisjoint) {
    Rng rng(4);
    for (std::size_t n : {4u, 5u, 48u}) {
        const auto [train, valid] = random_halves(n, rng);
        EXPECT_EQ(train.size(), n / 2);
        EXPECT_EQ(train.size() + valid.size(), n);
        std::set<std::size_t> all(train.begin(), train.end());
        all.insert(valid.begin(), valid.end());
        EXPECT_EQ(all.size(), n);
        EXPECT_TRUE(std::is_sorted(train.begin(), train.end()));
        EXPECT_TRUE(std::is_sorted(valid.begin(), valid.end()));
    }
}

TEST(CrossValidation, DeterministicWithBaselines) {
    const auto days = fixtures::contexts(fixtures::small_dataset(4, 12, 12));
    CrossValidationOptions o;
    o.splits = 2;
    o.calibration.grid.step = 45;
    const auto a = cross_validate(days, o);
    const auto b = cross_validate(days, o);
    ASSERT_EQ(a.splits.size(), 2u);
    for (std::size_t s = 0; s < a.splits.size(); ++s) {
        EXPECT_EQ(a.splits[s].training, b.splits[s].training);
        EXPECT_EQ(a.splits[s].theta, b.splits[s].theta);
        for (std::size_t k = 0; k < 5; ++k) {
            EXPECT_EQ(a.splits[s].outcomes[k].validation.p, b.splits[s].outcomes[k].validation.p);
            EXPECT_EQ(a.splits[s].outcomes[k].validation.energy_j, b.splits[s].outcomes[k].validation.energy_j);
        }
        EXPECT_EQ(a.splits[s].combined_grid.size(), 9u);
    }
    EXPECT_EQ(*a.summary[3].p, 0.0);
    EXPECT_EQ(*a.summary[4].p, 0.0);
    EXPECT_EQ(a.summary[4].energy_vs_max, 1.0);
    EXPECT_EQ(a.summary[0].row, StrategyRow::Internal);
}

TEST(CrossValidation, TooFewDays) {
    const auto days = fixtures::contexts(fixtures::small_dataset(3, 13, 12));
    EXPECT_EQ(error_of([&] { cross_validate(days, {}); }), Errc::TooFewDays);
}
