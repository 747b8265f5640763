#include "wsnx/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "wsnx/numfmt.hpp"

namespace wsnx {

double energy_saved(double e_consumed, double e_min, double e_max) {
    if (!std::isfinite(e_min) || !std::isfinite(e_max) || !std::isfinite(e_consumed)) {
        throw Error(Errc::OutOfRange, "non-finite energy");
    }
    if (!(e_min < e_max)) throw Error(Errc::DegenerateRange, "e_min must be below e_max");
    const double span = e_max - e_min;
    const double slack = 1e-9 * span;
    if (e_consumed < e_min - slack || e_consumed > e_max + slack) {
        throw Error(Errc::OutOfRange, "consumed energy " + format_number(e_consumed) + " outside [" + format_number(e_min) +
                                          ", " + format_number(e_max) + "]");
    }
    return std::clamp((e_max - e_consumed) / span, 0.0, 1.0);
}

double high_delta_recall(std::span<const IntervalRecord> records) {
    std::size_t highs = 0;
    std::size_t covered = 0;
    for (const auto& r : records) {
        if (!is_high(r.true_label)) continue;
        ++highs;
        if (is_high_information(r.plan)) ++covered;
    }
    if (highs == 0) throw Error(Errc::NoHighIntervals, "no HighDelta interval to recall");
    return static_cast<double>(covered) / static_cast<double>(highs);
}

double qom_accuracy(std::span<const IntervalRecord> records) {
    if (records.empty()) throw Error(Errc::EmptyInput, "no intervals");
    std::size_t hits = 0;
    for (const auto& r : records) hits += is_high(r.true_label) == is_high_information(r.plan) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(records.size());
}

double qom_good_fraction(std::span<const IntervalRecord> records) {
    if (records.empty()) throw Error(Errc::EmptyInput, "no intervals");
    std::size_t bad = 0;
    for (const auto& r : records) bad += is_high(r.true_label) && !is_high_information(r.plan) ? 1 : 0;
    return static_cast<double>(records.size() - bad) / static_cast<double>(records.size());
}

double performance_score(double e_ps, double p_high, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(Errc::InvalidParams, "alpha outside [0, 1]");
    if (!(e_ps >= 0.0 && e_ps <= 1.0) || !(p_high >= 0.0 && p_high <= 1.0)) {
        throw Error(Errc::InvalidParams, "score inputs must lie in [0, 1]");
    }
    // std::pow(0, 0) is 1, which is the convention we want
    return std::pow(e_ps, alpha) * std::pow(p_high, 1.0 - alpha);
}

Scores score_day(const DayRun& run, const EnergyRange& range, double alpha) {
    Scores s;
    s.alpha = alpha;
    s.energy_j = run.total_energy;
    s.e_ps = energy_saved(run.total_energy, range.e_min, range.e_max);
    s.accuracy = qom_accuracy(run.records);
    s.qom_good = qom_good_fraction(run.records);
    const bool any_high = std::any_of(run.records.begin(), run.records.end(),
                                      [](const IntervalRecord& r) { return is_high(r.true_label); });
    if (any_high) {
        s.p_high = high_delta_recall(run.records);
        s.p = performance_score(s.e_ps, *s.p_high, alpha);
    }
    return s;
}

Scores aggregate_scores(std::span<const Scores> days, double alpha) {
    if (days.empty()) throw Error(Errc::EmptyInput, "no scores to aggregate");
    Scores out;
    out.alpha = alpha;
    double p_high_sum = 0.0;
    std::size_t p_high_days = 0;
    for (const auto& d : days) {
        out.e_ps += d.e_ps;
        out.accuracy += d.accuracy;
        out.qom_good += d.qom_good;
        out.energy_j += d.energy_j;
        if (d.p_high) {
            p_high_sum += *d.p_high;
            ++p_high_days;
        }
    }
    const auto n = static_cast<double>(days.size());
    out.e_ps /= n;
    out.accuracy /= n;
    out.qom_good /= n;
    out.energy_j /= n;
    if (p_high_days > 0) {
        out.p_high = p_high_sum / static_cast<double>(p_high_days);
        out.p = performance_score(std::clamp(out.e_ps, 0.0, 1.0), *out.p_high, alpha);
    }
    return out;
}

std::string_view to_string(InfoSource source) noexcept {
    switch (source) {
        case InfoSource::Internal: return "internal";
        case InfoSource::External: return "external";
        case InfoSource::Combined: return "combined";
    }
    return "?";
}

std::vector<int> GridSpec::percentiles() const {
    if (step <= 0 || min_percentile < 0 || max_percentile > 100 || min_percentile > max_percentile) {
        throw Error(Errc::InvalidParams, "grid must satisfy 0 <= min <= max <= 100 with step > 0");
    }
    std::vector<int> out;
    for (int p = min_percentile; p <= max_percentile; p += step) out.push_back(p);
    return out;
}

Threshold pooled_threshold(std::span<const DayContext* const> days, Metric metric, int percentile) {
    std::vector<double> pooled;
    for (const auto* day : days) {
        const auto& d = day->series(metric).deltas;
        pooled.insert(pooled.end(), d.begin(), d.end());
    }
    return percentile_threshold(pooled, percentile);
}

GatewayConfig predictive_config(Approach approach, InfoSource source, const std::optional<Threshold>& sigma_rh,
                                const std::optional<Threshold>& sigma_t) {
    GatewayConfig config;
    config.approach = approach;
    config.strategy = Strategy::Predictive;
    config.internal_metric = Metric::RelativeHumidity;
    if (source != InfoSource::External) config.sigma_internal = sigma_rh;
    if (source != InfoSource::Internal) config.sigma_external = sigma_t;
    return config;
}

Scores evaluate(std::span<const DayContext* const> days, std::span<const EnergyRange> ranges,
                const GatewayConfig& config, const Threshold& theta, const SimulationSettings& settings, double alpha) {
    if (days.size() != ranges.size()) throw Error(Errc::InvalidParams, "one energy range per day required");
    std::vector<Scores> per_day;
    per_day.reserve(days.size());
    for (std::size_t i = 0; i < days.size(); ++i) {
        per_day.push_back(score_day(run_day(*days[i], config, theta, settings), ranges[i], alpha));
    }
    return aggregate_scores(per_day, alpha);
}

namespace {

std::vector<EnergyRange> ranges_for(std::span<const DayContext* const> days, Approach approach,
                                    const SimulationSettings& settings) {
    std::vector<EnergyRange> ranges;
    ranges.reserve(days.size());
    for (const auto* d : days) ranges.push_back(min_max_energy(*d, approach, settings));
    return ranges;
}

// true if `a` should replace the current best `b`
bool better(const GridCell& a, const GridCell& b) {
    const double pa = a.scores.p.value_or(-1.0);
    const double pb = b.scores.p.value_or(-1.0);
    if (pa != pb) return pa > pb;
    if (a.sigma_rh_percentile != b.sigma_rh_percentile) return a.sigma_rh_percentile > b.sigma_rh_percentile;
    return a.sigma_t_percentile > b.sigma_t_percentile;
}

CalibrationResult calibrate_with(std::span<const DayContext* const> training, std::span<const EnergyRange> ranges,
                                 const CalibrationOptions& options) {
    if (training.size() < 2) throw Error(Errc::EmptyTraining, "calibration needs at least two training days");
    const auto percentiles = options.grid.percentiles();

    CalibrationResult result;
    result.theta = pooled_threshold(training, Metric::RelativeHumidity, options.theta_percentile);

    std::vector<std::optional<int>> rh_axis{std::nullopt};
    std::vector<std::optional<int>> t_axis{std::nullopt};
    if (options.source != InfoSource::External) rh_axis.assign(percentiles.begin(), percentiles.end());
    if (options.source != InfoSource::Internal) t_axis.assign(percentiles.begin(), percentiles.end());

    auto sigma_at = [&](Metric metric, const std::optional<int>& pct) -> std::optional<Threshold> {
        if (!pct) return std::nullopt;
        return pooled_threshold(training, metric, *pct);
    };

    result.grid.reserve(rh_axis.size() * t_axis.size());
    for (const auto& rh_pct : rh_axis) {
        const auto sigma_rh = sigma_at(Metric::RelativeHumidity, rh_pct);
        for (const auto& t_pct : t_axis) {
            const auto sigma_t = sigma_at(Metric::Temperature, t_pct);
            const auto config = predictive_config(options.approach, options.source, sigma_rh, sigma_t);
            GridCell cell{rh_pct, t_pct,
                          evaluate(training, ranges, config, result.theta, options.simulation, options.alpha)};
            result.grid.push_back(cell);
        }
    }

    result.best = result.grid.front();
    for (const auto& cell : result.grid) {
        if (better(cell, result.best)) result.best = cell;
    }
    result.sigma_rh = sigma_at(Metric::RelativeHumidity, result.best.sigma_rh_percentile);
    result.sigma_t = sigma_at(Metric::Temperature, result.best.sigma_t_percentile);
    return result;
}

std::vector<const DayContext*> pointers(std::span<const DayContext> days) {
    std::vector<const DayContext*> out;
    out.reserve(days.size());
    for (const auto& d : days) out.push_back(&d);
    return out;
}

template <typename T>
std::vector<T> pick(std::span<const T> all, const std::vector<std::size_t>& positions) {
    std::vector<T> out;
    out.reserve(positions.size());
    for (auto p : positions) out.push_back(all[p]);
    return out;
}

}  // namespace

CalibrationResult calibrate(std::span<const DayContext* const> training, const CalibrationOptions& options) {
    if (training.size() < 2) throw Error(Errc::EmptyTraining, "calibration needs at least two training days");
    const auto ranges = ranges_for(training, options.approach, options.simulation);
    return calibrate_with(training, ranges, options);
}

CalibrationResult calibrate(std::span<const DayContext> training, const CalibrationOptions& options) {
    const auto ptrs = pointers(training);
    return calibrate(std::span<const DayContext* const>(ptrs), options);
}

std::string_view to_string(StrategyRow row) noexcept {
    switch (row) {
        case StrategyRow::Internal: return "internal";
        case StrategyRow::External: return "external";
        case StrategyRow::Combined: return "combined";
        case StrategyRow::AlwaysLow: return "always_low";
        case StrategyRow::AlwaysHigh: return "always_high";
    }
    return "?";
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> random_halves(std::size_t n, Rng& rng) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    std::vector<std::size_t> training(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n / 2));
    std::vector<std::size_t> validation(order.begin() + static_cast<std::ptrdiff_t>(n / 2), order.end());
    std::sort(training.begin(), training.end());
    std::sort(validation.begin(), validation.end());
    return {training, validation};
}

CrossValidationResult cross_validate(std::span<const DayContext> days, const CrossValidationOptions& options) {
    if (days.size() < 4) throw Error(Errc::TooFewDays, "cross-validation needs at least 4 days");
    if (options.splits < 1) throw Error(Errc::InvalidParams, "need at least one split");
    const auto& calib = options.calibration;

    const auto all = pointers(days);
    const auto all_ranges = ranges_for(all, calib.approach, calib.simulation);
    Rng rng(options.seed);

    CrossValidationResult result;
    for (int s = 0; s < options.splits; ++s) {
        SplitResult split;
        split.split_index = s;
        std::tie(split.training, split.validation) = random_halves(days.size(), rng);

        const auto train_days = pick<const DayContext*>(all, split.training);
        const auto train_ranges = pick<EnergyRange>(all_ranges, split.training);
        const auto valid_days = pick<const DayContext*>(all, split.validation);
        const auto valid_ranges = pick<EnergyRange>(all_ranges, split.validation);

        split.theta = pooled_threshold(train_days, Metric::RelativeHumidity, calib.theta_percentile);

        auto score = [&](const GatewayConfig& config) {
            return evaluate(valid_days, valid_ranges, config, split.theta, calib.simulation, calib.alpha);
        };

        for (std::size_t k = 0; k < kStrategyRows.size(); ++k) {
            const StrategyRow row = kStrategyRows[k];
            StrategyOutcome outcome;
            outcome.row = row;
            if (row == StrategyRow::AlwaysLow || row == StrategyRow::AlwaysHigh) {
                const auto config = baseline_config(
                    calib.approach, row == StrategyRow::AlwaysLow ? Strategy::AlwaysLow : Strategy::AlwaysHigh);
                outcome.config = config;
                outcome.validation = score(config);
            } else {
                CalibrationOptions opts = calib;
                opts.source = row == StrategyRow::Internal   ? InfoSource::Internal
                              : row == StrategyRow::External ? InfoSource::External
                                                             : InfoSource::Combined;
                auto calibrated = calibrate_with(train_days, train_ranges, opts);
                outcome.sigma_rh_percentile = calibrated.best.sigma_rh_percentile;
                outcome.sigma_t_percentile = calibrated.best.sigma_t_percentile;
                outcome.config = predictive_config(calib.approach, opts.source, calibrated.sigma_rh, calibrated.sigma_t);
                outcome.validation = score(outcome.config);
                if (row == StrategyRow::Combined) split.combined_grid = std::move(calibrated.grid);
            }
            split.outcomes[k] = outcome;
        }
        result.splits.push_back(std::move(split));
    }

    const std::size_t high_index = 4;
    double high_energy = 0.0;
    for (const auto& split : result.splits) high_energy += split.outcomes[high_index].validation.energy_j;
    high_energy /= static_cast<double>(result.splits.size());

    for (std::size_t k = 0; k < kStrategyRows.size(); ++k) {
        SummaryRow row;
        row.theta_percentile = calib.theta_percentile;
        row.row = kStrategyRows[k];
        double p_high = 0.0, p = 0.0;
        std::size_t n_p_high = 0, n_p = 0;
        for (const auto& split : result.splits) {
            const auto& v = split.outcomes[k].validation;
            row.energy_j += v.energy_j;
            row.e_ps += v.e_ps;
            row.accuracy += v.accuracy;
            row.qom_good += v.qom_good;
            if (v.p_high) {
                p_high += *v.p_high;
                ++n_p_high;
            }
            if (v.p) {
                p += *v.p;
                ++n_p;
            }
        }
        const auto n = static_cast<double>(result.splits.size());
        row.energy_j /= n;
        row.e_ps /= n;
        row.accuracy /= n;
        row.qom_good /= n;
        row.energy_vs_max = high_energy > 0.0 ? row.energy_j / high_energy : 0.0;
        if (n_p_high > 0) row.p_high = p_high / static_cast<double>(n_p_high);
        if (n_p > 0) row.p = p / static_cast<double>(n_p);
        result.summary[k] = row;
    }
    return result;
}

}  // namespace wsnx
