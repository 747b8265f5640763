#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "wsnx/trace.hpp"

namespace wsnx {

inline constexpr double kDefaultWindowLength = 300.0;

enum class Trend : std::uint8_t { Rising, Falling, Flat };

/// Label of a delta against a threshold; also used for symptoms and predictions.
enum class DeltaLabel : std::uint8_t { Low, HighPlus, HighMinus };

std::string_view to_string(DeltaLabel label) noexcept;  // "low", "high+", "high-"
std::string_view to_string(Trend trend) noexcept;

constexpr bool is_high(DeltaLabel label) noexcept { return label != DeltaLabel::Low; }

constexpr Trend trend_of(double previous, double next) noexcept {
    return next > previous ? Trend::Rising : (next < previous ? Trend::Falling : Trend::Flat);
}

struct WindowSeries {
    Metric metric = Metric::Temperature;
    double window_length = kDefaultWindowLength;
    std::vector<double> averages;
    std::vector<double> deltas;  // |averages[i + 1] - averages[i]|
    std::vector<Trend> signs;    // aligned with deltas
};

/// Builds deltas and signs from a list of window averages.
WindowSeries series_from_averages(Metric metric, double window_length, std::vector<double> averages);

/// Averages all measurements of every node per window. Windows start at the
/// trace's day start; the last window is the one holding the last sample, and
/// windows reaching past the day boundary are dropped.
/// Throws EmptyInput for an empty trace, InvalidParams for window_length <= 0
/// and EmptyWindow if a kept window has no measurements.
WindowSeries window_averages(const Trace& trace, double window_length = kDefaultWindowLength);

struct Threshold {
    int percentile = -1;  // -1 marks an uncalibrated threshold
    double value = 0.0;

    bool calibrated() const noexcept;
    bool operator==(const Threshold&) const = default;
};

/// Nearest-rank percentile: rank = ceil(p / 100 * n), 1-based; p = 0 gives the minimum.
Threshold percentile_threshold(std::span<const double> deltas, int percentile);

/// HighPlus / HighMinus iff delta > theta (strict) with a rising / falling average.
DeltaLabel label_delta(double delta, Trend sign, const Threshold& theta);

/// Same rule as label_delta, applied with the symptom threshold sigma.
DeltaLabel detect_symptom(double delta, Trend sign, const Threshold& sigma);

std::vector<DeltaLabel> label_series(const WindowSeries& series, const Threshold& theta);

/// Number of deltas strictly above the threshold value.
std::size_t count_high(std::span<const double> deltas, const Threshold& theta);

}  // namespace wsnx
