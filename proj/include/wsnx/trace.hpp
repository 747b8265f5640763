#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wsnx/error.hpp"

namespace wsnx {

inline constexpr double kSecondsPerDay = 86400.0;

enum class Metric : std::uint8_t { Temperature, RelativeHumidity };

/// CSV spelling: "temperature" / "relative_humidity".
std::string_view to_string(Metric metric) noexcept;
std::optional<Metric> parse_metric(std::string_view text) noexcept;

using NodeId = std::uint32_t;

struct Measurement {
    double timestamp = 0.0;  // seconds since trace epoch
    NodeId node_id = 0;
    Metric metric = Metric::Temperature;
    double value = 0.0;

    bool operator==(const Measurement&) const = default;
};

/// Physical range check: RH in [0, 100] %, temperature in [-50, 100] degC.
bool value_in_range(Metric metric, double value) noexcept;

/// One metric over one day. Measurements are kept sorted by
/// (timestamp, node_id), which also fixes the summation order downstream.
class Trace {
public:
    Trace() = default;

    /// Throws InvalidParams on metric mismatch or out-of-day timestamps and
    /// MalformedRow on range violations or repeated (node, timestamp).
    Trace(Metric metric, int day_index, std::vector<Measurement> measurements);

    Metric metric() const noexcept { return metric_; }
    int day_index() const noexcept { return day_index_; }
    double day_start() const noexcept { return day_index_ * kSecondsPerDay; }
    std::span<const Measurement> measurements() const noexcept { return measurements_; }
    bool empty() const noexcept { return measurements_.empty(); }

    /// Distinct node ids, ascending.
    std::vector<NodeId> node_ids() const;

    /// Zero-order hold of one node's values on the grid day_start + k * step,
    /// k in [0, count). Before the node's first sample its first value is used.
    std::vector<double> hold_grid(NodeId node, double step, std::size_t count) const;

    bool operator==(const Trace&) const = default;

private:
    Metric metric_ = Metric::Temperature;
    int day_index_ = 0;
    std::vector<Measurement> measurements_;
};

struct DayPair {
    Trace temperature;
    Trace humidity;

    int day_index() const noexcept { return humidity.day_index(); }
    const Trace& trace(Metric metric) const noexcept {
        return metric == Metric::Temperature ? temperature : humidity;
    }
    bool operator==(const DayPair&) const = default;
};

struct Dataset {
    std::vector<DayPair> days;  // ascending day_index

    std::size_t size() const noexcept { return days.size(); }
    bool operator==(const Dataset&) const = default;
};

// -- CSV ingestion -----------------------------------------------------------

struct RowViolation {
    std::size_t line = 0;
    Errc code = Errc::MalformedRow;
    std::string message;
};

struct DayRowCount {
    int day_index = 0;
    std::size_t temperature_rows = 0;
    std::size_t humidity_rows = 0;
    bool complete() const noexcept { return temperature_rows > 0 && humidity_rows > 0; }
};

struct ValidationReport {
    std::size_t rows = 0;
    std::vector<DayRowCount> days;  // ascending day_index
    std::vector<RowViolation> violations;

    std::size_t complete_days() const noexcept;
};

/// Scans every row and lists all violations; never throws on content.
ValidationReport validate_data(std::istream& in);
ValidationReport validate_data(const std::filesystem::path& path);

/// Parses the trace CSV. Days missing one of the two metrics are skipped.
/// Throws MalformedRow / MixedMetricDay for the first violation (with its
/// line number) and EmptyDataset if no complete day-pair remains.
Dataset load_dataset(std::istream& in);
Dataset load_dataset(const std::filesystem::path& path);

void write_dataset(const Dataset& dataset, std::ostream& out);
void write_dataset(const Dataset& dataset, const std::filesystem::path& path);

// -- synthesis ---------------------------------------------------------------

struct SynthesisParams {
    int humidity_nodes = 26;
    int temperature_nodes = 1;
    double cadence_s = 30.0;

    double temp_mean = 22.0;
    double temp_day_spread = 1.5;       // sd of the per-day mean offset
    double temp_diurnal_amplitude = 2.0;
    double temp_ar_coeff = 0.97;        // per-tick AR(1) coefficient
    double temp_noise = 0.01;           // AR innovation sd per tick
    double ramp_events_per_day = 60.0;
    double ramp_magnitude = 1.5;        // degC, scaled by U(0.5, 1.5)
    double ramp_duration_s = 600.0;     // rise time, scaled by U(0.5, 1.5)

    double rh_mean = 50.0;
    double rh_per_degree = 3.0;         // %RH per degC of coupled response
    double coupling = -0.9;             // in [-1, 0]
    double lag_s = 300.0;               // humidity responds this much later
    double rh_ar_coeff = 0.5;
    double rh_noise = 0.1;              // intrinsic AR innovation sd per tick

    double node_noise = 0.02;           // independent per-measurement noise

    /// Throws InvalidParams.
    void validate() const;
};

/// Deterministic function of (days, seed, params). Temperature node ids
/// start at 0, humidity node ids follow.
Dataset synthesize_dataset(int days, std::uint64_t seed, const SynthesisParams& params = {});

}  // namespace wsnx
