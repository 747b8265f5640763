#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wsnx/rng.hpp"
#include "wsnx/simulator.hpp"

namespace wsnx {

/// Fraction of the [e_min, e_max] span that was not spent.
/// Throws DegenerateRange when e_min >= e_max and OutOfRange when e_consumed
/// falls outside the span by more than rounding noise.
double energy_saved(double e_consumed, double e_min, double e_max);

/// Fraction of true HighDelta windows that ran a high-information plan.
/// Throws NoHighIntervals when there is none: the ratio is undefined, not 0.
double high_delta_recall(std::span<const IntervalRecord> records);

/// Fraction of windows in a highlighted QoM cell: (High true, high plan) or
/// (Low true, low plan). Throws EmptyInput.
double qom_accuracy(std::span<const IntervalRecord> records);

/// Fraction of windows with GOOD QoM, i.e. all but (High true, low plan).
double qom_good_fraction(std::span<const IntervalRecord> records);

/// e_ps^alpha * p_high^(1 - alpha), with 0^0 = 1. Throws InvalidParams for
/// alpha or inputs outside [0, 1].
double performance_score(double e_ps, double p_high, double alpha);

struct Scores {
    double e_ps = 0.0;
    std::optional<double> p_high;  // undefined without true HighDelta windows
    double accuracy = 0.0;
    double qom_good = 0.0;
    std::optional<double> p;       // e_ps^alpha * p_high^beta when p_high is defined
    double alpha = 0.5;
    double energy_j = 0.0;         // mean energy per day

    double beta() const noexcept { return 1.0 - alpha; }
};

Scores score_day(const DayRun& run, const EnergyRange& range, double alpha);

/// Means of per-day scores (p_high over the days where it is defined); p is
/// then recomputed from the averaged e_ps and p_high.
Scores aggregate_scores(std::span<const Scores> days, double alpha);

enum class InfoSource : std::uint8_t { Internal, External, Combined };

std::string_view to_string(InfoSource source) noexcept;

struct GridSpec {
    int min_percentile = 0;
    int max_percentile = 90;
    int step = 10;

    std::vector<int> percentiles() const;  // throws InvalidParams
};

struct GridCell {
    std::optional<int> sigma_rh_percentile;  // absent when that predictor is off
    std::optional<int> sigma_t_percentile;
    Scores scores;
};

struct CalibrationOptions {
    int theta_percentile = 60;
    Approach approach = Approach::NodeSets;
    GridSpec grid;
    double alpha = 0.5;
    SimulationSettings simulation;
    InfoSource source = InfoSource::Combined;
};

struct CalibrationResult {
    Threshold theta;
    std::optional<Threshold> sigma_rh;
    std::optional<Threshold> sigma_t;
    GridCell best;
    std::vector<GridCell> grid;  // row-major: sigma_rh outer, sigma_t inner
};

/// Pooled nearest-rank percentile of one metric's full-trace deltas.
Threshold pooled_threshold(std::span<const DayContext* const> days, Metric metric, int percentile);

/// Gateway configuration for an information source and symptom thresholds.
GatewayConfig predictive_config(Approach approach, InfoSource source, const std::optional<Threshold>& sigma_rh,
                                const std::optional<Threshold>& sigma_t);

/// Scores one gateway configuration over a set of days.
Scores evaluate(std::span<const DayContext* const> days, std::span<const EnergyRange> ranges,
                const GatewayConfig& config, const Threshold& theta, const SimulationSettings& settings, double alpha);

/// Grid search for the symptom percentiles with the best mean p on the
/// training days. theta comes from the same days. Ties go to the higher
/// sigma_rh percentile, then the higher sigma_t percentile.
/// Throws EmptyTraining for fewer than two days.
CalibrationResult calibrate(std::span<const DayContext* const> training, const CalibrationOptions& options);
CalibrationResult calibrate(std::span<const DayContext> training, const CalibrationOptions& options);

enum class StrategyRow : std::uint8_t { Internal, External, Combined, AlwaysLow, AlwaysHigh };
inline constexpr std::array<StrategyRow, 5> kStrategyRows{StrategyRow::Internal, StrategyRow::External,
                                                          StrategyRow::Combined, StrategyRow::AlwaysLow,
                                                          StrategyRow::AlwaysHigh};

std::string_view to_string(StrategyRow row) noexcept;

struct StrategyOutcome {
    StrategyRow row = StrategyRow::Combined;
    std::optional<int> sigma_rh_percentile;
    std::optional<int> sigma_t_percentile;
    GatewayConfig config;  // as calibrated on the training half
    Scores validation;
};

struct SplitResult {
    int split_index = 0;
    std::vector<std::size_t> training;    // positions in the day list
    std::vector<std::size_t> validation;
    Threshold theta;
    std::array<StrategyOutcome, 5> outcomes;  // in kStrategyRows order
    std::vector<GridCell> combined_grid;
};

/// Split-averaged validation numbers for one strategy (a bar group entry).
struct SummaryRow {
    int theta_percentile = 0;
    StrategyRow row = StrategyRow::Combined;
    double energy_j = 0.0;        // mean energy per validation day
    double energy_vs_max = 0.0;   // energy_j relative to the always-High mean
    double e_ps = 0.0;
    std::optional<double> p_high;
    double accuracy = 0.0;
    double qom_good = 0.0;
    std::optional<double> p;
};

struct CrossValidationOptions {
    int splits = 10;
    std::uint64_t seed = 7;
    CalibrationOptions calibration;
};

struct CrossValidationResult {
    std::vector<SplitResult> splits;
    std::array<SummaryRow, 5> summary;  // in kStrategyRows order
};

/// Repeated random sub-sampling: per split the days are shuffled and halved,
/// every strategy is calibrated on the first half and scored on the second.
/// Throws TooFewDays for fewer than 4 days (each half needs two).
CrossValidationResult cross_validate(std::span<const DayContext> days, const CrossValidationOptions& options);

/// The random halving used by cross_validate: (training, validation) positions.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> random_halves(std::size_t n, Rng& rng);

}  // namespace wsnx
