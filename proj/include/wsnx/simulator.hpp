#pragma once
// Day-long simulation of the two networks. Network A (temperature) reports one
// average per window to its EG, which forwards it to EG-B. Network B
// (relative humidity) samples its trace at the cadence of the current plan,
// its sink averages the reports, and EG-B picks the plan for the next window.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "wsnx/delta.hpp"
#include "wsnx/gateway.hpp"
#include "wsnx/plan.hpp"
#include "wsnx/predictor.hpp"
#include "wsnx/trace.hpp"

namespace wsnx {

/// Joules per event. Deactivated nodes still pay e_idle.
struct EnergyModel {
    double e_measure = 0.5e-3;
    double e_tx = 2.0e-3;
    double e_idle = 0.06e-3;   // per node per second
    double e_update = 50e-3;   // per network-wide plan dissemination

    void validate() const;  // throws InvalidParams
    EnergyModel scaled(double factor) const;
};

/// Event counts for a span of time; energy is always derived from these so
/// totals and per-window sums agree exactly.
struct UsageCounts {
    std::int64_t measurements = 0;
    std::int64_t reports = 0;
    std::int64_t updates = 0;
    double idle_node_seconds = 0.0;

    UsageCounts& operator+=(const UsageCounts& other) noexcept;
    bool operator==(const UsageCounts&) const = default;
};

double energy_of(const UsageCounts& usage, const EnergyModel& model) noexcept;

struct SimulationSettings {
    double window_length = kDefaultWindowLength;
    double tick = 30.0;  // sampling grid; must divide the window and all plan intervals
    EnergyModel energy;
    PlanSettings plans;

    void validate() const;  // throws InvalidParams
};

struct IntervalRecord {
    std::int64_t interval = 0;
    PlanKind plan = PlanKind::HalfSetA;
    std::size_t active_nodes = 0;
    UsageCounts usage;
    double reported_average = 0.0;  // sink-side average of this window's reports
    double energy = 0.0;
    CombinedLabel prediction = CombinedLabel::Low;  // decided at this window's close
    DeltaLabel true_label = DeltaLabel::Low;        // from the full trace; window 0 is Low

    bool operator==(const IntervalRecord&) const = default;
};

/// A day resampled for simulation: per-node zero-order-hold grids of the
/// humidity trace plus full-trace window series of both metrics.
class DayContext {
public:
    /// Throws TraceTooShort if either trace yields fewer windows than a full day.
    DayContext(const DayPair& day, const SimulationSettings& settings);

    int day_index() const noexcept { return day_index_; }
    double window_length() const noexcept { return window_length_; }
    double tick() const noexcept { return tick_; }
    std::size_t windows() const noexcept { return windows_; }
    std::size_t ticks_per_window() const noexcept { return ticks_per_window_; }
    std::span<const NodeId> nodes() const noexcept { return nodes_; }
    std::span<const double> node_grid(std::size_t position) const noexcept;

    const WindowSeries& humidity() const noexcept { return humidity_; }
    const WindowSeries& temperature() const noexcept { return temperature_; }
    const WindowSeries& series(Metric metric) const noexcept {
        return metric == Metric::Temperature ? temperature_ : humidity_;
    }

private:
    int day_index_ = 0;
    double window_length_ = 0.0;
    double tick_ = 0.0;
    std::size_t windows_ = 0;
    std::size_t ticks_per_window_ = 0;
    std::vector<NodeId> nodes_;
    std::vector<double> grid_;  // node-major, windows_ * ticks_per_window_ per node
    WindowSeries humidity_;
    WindowSeries temperature_;
};

struct DayRun {
    std::vector<IntervalRecord> records;
    UsageCounts totals;
    double total_energy = 0.0;
    std::size_t stale_messages = 0;
};

/// Simulates one day under `config`. theta labels the true humidity deltas.
/// Throws UncalibratedThreshold, TraceTooShort (via DayContext) and
/// InvalidParams for mismatched settings.
DayRun run_day(const DayContext& day, const GatewayConfig& config, const Threshold& theta,
               const SimulationSettings& settings);

DayRun run_day(const DayPair& day, const GatewayConfig& config, const Threshold& theta,
               const SimulationSettings& settings);

struct EnergyRange {
    double e_min = 0.0;  // always-Low plan
    double e_max = 0.0;  // always-High plan
};

EnergyRange min_max_energy(const DayContext& day, Approach approach, const SimulationSettings& settings);
EnergyRange min_max_energy(std::span<const DayContext> days, Approach approach, const SimulationSettings& settings);

/// `interval,plan,measurements,avg,energy_j,prediction,true_label`
void write_run_report(std::span<const IntervalRecord> records, std::ostream& out);

}  // namespace wsnx
