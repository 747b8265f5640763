#include "wsnx/delta.hpp"

#include <algorithm>
#include <cmath>

#include "wsnx/kernels.hpp"
#include "wsnx/numfmt.hpp"

namespace wsnx {

std::string_view to_string(DeltaLabel label) noexcept {
    switch (label) {
        case DeltaLabel::Low: return "low";
        case DeltaLabel::HighPlus: return "high+";
        case DeltaLabel::HighMinus: return "high-";
    }
    return "?";
}

std::string_view to_string(Trend trend) noexcept {
    switch (trend) {
        case Trend::Rising: return "rising";
        case Trend::Falling: return "falling";
        case Trend::Flat: return "flat";
    }
    return "?";
}

WindowSeries series_from_averages(Metric metric, double window_length, std::vector<double> averages) {
    WindowSeries s;
    s.metric = metric;
    s.window_length = window_length;
    s.averages = std::move(averages);
    if (s.averages.size() >= 2) {
        s.deltas.resize(s.averages.size() - 1);
        kernels::abs_diff(s.averages, s.deltas);
        s.signs.reserve(s.deltas.size());
        for (std::size_t i = 0; i + 1 < s.averages.size(); ++i) s.signs.push_back(trend_of(s.averages[i], s.averages[i + 1]));
    }
    return s;
}

WindowSeries window_averages(const Trace& trace, double window_length) {
    if (trace.empty()) throw Error(Errc::EmptyInput, "trace has no measurements");
    if (!(window_length > 0.0)) throw Error(Errc::InvalidParams, "window length must be positive");

    const auto ms = trace.measurements();
    const double origin = trace.day_start();
    const auto per_day = static_cast<std::size_t>(std::floor(kSecondsPerDay / window_length));
    const auto up_to_last = static_cast<std::size_t>(std::floor((ms.back().timestamp - origin) / window_length)) + 1;
    const std::size_t windows = std::min(per_day, up_to_last);
    if (windows == 0) throw Error(Errc::EmptyWindow, "window longer than the day");

    std::vector<double> values;
    values.reserve(ms.size());
    for (const auto& m : ms) values.push_back(m.value);

    std::vector<double> averages(windows);
    std::size_t begin = 0;
    for (std::size_t w = 0; w < windows; ++w) {
        const double end_time = origin + static_cast<double>(w + 1) * window_length;
        std::size_t end = begin;
        while (end < ms.size() && ms[end].timestamp < end_time) ++end;
        if (end == begin) {
            throw Error(Errc::EmptyWindow, "window " + std::to_string(w) + " of " + std::string(to_string(trace.metric())) +
                                               " day " + std::to_string(trace.day_index()) + " has no measurements");
        }
        const std::span<const double> window(values.data() + begin, end - begin);
        averages[w] = kernels::sum(window) / static_cast<double>(window.size());
        begin = end;
    }
    return series_from_averages(trace.metric(), window_length, std::move(averages));
}

bool Threshold::calibrated() const noexcept {
    return percentile >= 0 && percentile <= 100 && std::isfinite(value) && value >= 0.0;
}

Threshold percentile_threshold(std::span<const double> deltas, int percentile) {
    if (deltas.empty()) throw Error(Errc::EmptyInput, "no deltas to take a percentile of");
    if (percentile < 0 || percentile > 100) throw Error(Errc::InvalidParams, "percentile outside [0, 100]");
    std::vector<double> sorted(deltas.begin(), deltas.end());
    const std::size_t n = sorted.size();
    const std::size_t rank = std::max<std::size_t>(1, (static_cast<std::size_t>(percentile) * n + 99) / 100);
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1), sorted.end());
    return Threshold{percentile, sorted[rank - 1]};
}

DeltaLabel label_delta(double delta, Trend sign, const Threshold& theta) {
    if (!(delta >= 0.0)) throw Error(Errc::InvalidParams, "delta must be >= 0, got " + format_number(delta));
    if (!theta.calibrated()) throw Error(Errc::UncalibratedThreshold, "threshold not calibrated");
    if (!(delta > theta.value)) return DeltaLabel::Low;
    switch (sign) {
        case Trend::Rising: return DeltaLabel::HighPlus;
        case Trend::Falling: return DeltaLabel::HighMinus;
        case Trend::Flat: return DeltaLabel::Low;
    }
    return DeltaLabel::Low;
}

DeltaLabel detect_symptom(double delta, Trend sign, const Threshold& sigma) { return label_delta(delta, sign, sigma); }

std::vector<DeltaLabel> label_series(const WindowSeries& series, const Threshold& theta) {
    std::vector<DeltaLabel> labels;
    labels.reserve(series.deltas.size());
    for (std::size_t i = 0; i < series.deltas.size(); ++i) labels.push_back(label_delta(series.deltas[i], series.signs[i], theta));
    return labels;
}

std::size_t count_high(std::span<const double> deltas, const Threshold& theta) {
    if (!theta.calibrated()) throw Error(Errc::UncalibratedThreshold, "threshold not calibrated");
    return kernels::count_greater(deltas, theta.value);
}

}  // namespace wsnx
