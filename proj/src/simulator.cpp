#include "wsnx/simulator.hpp"

#include <cmath>
#include <optional>
#include <ostream>

#include "wsnx/kernels.hpp"
#include "wsnx/numfmt.hpp"

namespace wsnx {

namespace {

bool is_multiple(double value, double unit) {
    if (!(unit > 0.0) || !(value > 0.0)) return false;
    const double ratio = value / unit;
    return std::fabs(ratio - std::round(ratio)) < 1e-9 && std::round(ratio) >= 1.0;
}

std::size_t ratio_of(double value, double unit) { return static_cast<std::size_t>(std::llround(value / unit)); }

std::size_t windows_per_day(double window_length) {
    return static_cast<std::size_t>(std::floor(kSecondsPerDay / window_length));
}

DayRun simulate(const DayContext& day, const GatewayConfig& config, const std::optional<Threshold>& theta,
                const SimulationSettings& settings) {
    settings.validate();
    if (settings.window_length != day.window_length() || settings.tick != day.tick()) {
        throw Error(Errc::InvalidParams, "day was prepared with different window/tick settings");
    }
    if (theta && !theta->calibrated()) throw Error(Errc::UncalibratedThreshold, "theta not calibrated");

    const auto nodes = day.nodes();
    const std::size_t n_nodes = nodes.size();
    const std::size_t tpw = day.ticks_per_window();
    const auto& rh = day.humidity();
    const auto& temp = day.temperature();

    std::vector<std::size_t> next_tick(n_nodes, 0);
    std::vector<std::size_t> node_step(n_nodes, 0);  // 0 = inactive last window

    GatewayState gateway = make_gateway(config);
    DayRun run;
    run.records.reserve(day.windows());
    PlanKind previous_plan = gateway.current_plan;

    for (std::size_t w = 0; w < day.windows(); ++w) {
        const PlanKind plan = gateway.current_plan;
        const std::size_t step = ratio_of(sensing_interval(plan, settings.plans), settings.tick);
        const std::size_t begin = w * tpw;
        const std::size_t end = begin + tpw;

        // (a) active nodes sample and report; (b) the sink averages
        double total = 0.0;
        std::int64_t count = 0;
        std::size_t active = 0;
        for (std::size_t i = 0; i < n_nodes; ++i) {
            if (!node_active(plan, i)) {
                node_step[i] = 0;
                continue;
            }
            ++active;
            // (re)configured nodes start sampling at the window boundary
            if (node_step[i] != step) next_tick[i] = begin;
            node_step[i] = step;
            const auto grid = day.node_grid(i);
            std::size_t t = next_tick[i];
            if (step == 1) {
                total += kernels::sum(grid.subspan(t, end - t));
                count += static_cast<std::int64_t>(end - t);
                t = end;
            } else {
                double node_sum = 0.0;
                for (; t < end; t += step) {
                    node_sum += grid[t];
                    ++count;
                }
                total += node_sum;
            }
            next_tick[i] = t;
        }
        if (count == 0) throw Error(Errc::EmptyWindow, "no reports in window " + std::to_string(w));

        IntervalRecord record;
        record.interval = static_cast<std::int64_t>(w);
        record.plan = plan;
        record.active_nodes = active;
        record.usage.measurements = count;
        record.usage.reports = count;
        record.usage.idle_node_seconds = static_cast<double>(n_nodes) * settings.window_length;
        record.usage.updates = (w > 0 && plan != previous_plan) ? 1 : 0;
        record.reported_average = total / static_cast<double>(count);
        record.energy = energy_of(record.usage, settings.energy);

        // (b) Network A's window average reaches EG-B; (c) EG-B decides
        const EgMessage forwarded{"A", Metric::Temperature, static_cast<std::int64_t>(w), temp.averages[w]};
        auto [next_state, decision] = on_window_close(std::move(gateway), record.reported_average, {&forwarded, 1});
        gateway = std::move(next_state);
        record.prediction = decision.combined;

        if (theta && w > 0) record.true_label = label_delta(rh.deltas[w - 1], rh.signs[w - 1], *theta);

        run.totals += record.usage;
        run.records.push_back(record);
        previous_plan = plan;  // (d) the next plan takes effect at the boundary
    }
    run.total_energy = energy_of(run.totals, settings.energy);
    run.stale_messages = gateway.stale_dropped;
    return run;
}

}  // namespace

void EnergyModel::validate() const {
    for (double v : {e_measure, e_tx, e_idle, e_update}) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw Error(Errc::InvalidParams, "energy parameters must be finite and >= 0");
    }
}

EnergyModel EnergyModel::scaled(double factor) const {
    return EnergyModel{e_measure * factor, e_tx * factor, e_idle * factor, e_update * factor};
}

UsageCounts& UsageCounts::operator+=(const UsageCounts& other) noexcept {
    measurements += other.measurements;
    reports += other.reports;
    updates += other.updates;
    idle_node_seconds += other.idle_node_seconds;
    return *this;
}

double energy_of(const UsageCounts& u, const EnergyModel& m) noexcept {
    return static_cast<double>(u.measurements) * m.e_measure + static_cast<double>(u.reports) * m.e_tx +
           u.idle_node_seconds * m.e_idle + static_cast<double>(u.updates) * m.e_update;
}

void SimulationSettings::validate() const {
    energy.validate();
    if (!(tick > 0.0)) throw Error(Errc::InvalidParams, "tick must be positive");
    if (!is_multiple(window_length, tick)) throw Error(Errc::InvalidParams, "window length must be a multiple of the tick");
    for (double interval : {plans.node_sets_interval, plans.fast_interval, plans.slow_interval}) {
        if (!is_multiple(interval, tick)) throw Error(Errc::InvalidParams, "plan intervals must be multiples of the tick");
    }
}

DayContext::DayContext(const DayPair& day, const SimulationSettings& settings)
    : day_index_(day.day_index()), window_length_(settings.window_length), tick_(settings.tick) {
    settings.validate();
    if (day.temperature.day_index() != day.humidity.day_index()) {
        throw Error(Errc::InvalidParams, "day pair traces disagree on day index");
    }
    if (day.temperature.empty() || day.humidity.empty()) throw Error(Errc::TraceTooShort, "empty trace");
    const std::size_t expected = windows_per_day(window_length_);
    humidity_ = window_averages(day.humidity, window_length_);
    temperature_ = window_averages(day.temperature, window_length_);
    if (humidity_.averages.size() < expected || temperature_.averages.size() < expected) {
        throw Error(Errc::TraceTooShort, "day " + std::to_string(day_index_) + " covers fewer than " +
                                             std::to_string(expected) + " windows");
    }
    windows_ = expected;
    ticks_per_window_ = ratio_of(window_length_, tick_);
    nodes_ = day.humidity.node_ids();
    const std::size_t per_node = windows_ * ticks_per_window_;
    grid_.reserve(per_node * nodes_.size());
    for (NodeId id : nodes_) {
        const auto g = day.humidity.hold_grid(id, tick_, per_node);
        grid_.insert(grid_.end(), g.begin(), g.end());
    }
}

std::span<const double> DayContext::node_grid(std::size_t position) const noexcept {
    const std::size_t per_node = windows_ * ticks_per_window_;
    return std::span<const double>(grid_).subspan(position * per_node, per_node);
}

DayRun run_day(const DayContext& day, const GatewayConfig& config, const Threshold& theta,
               const SimulationSettings& settings) {
    return simulate(day, config, theta, settings);
}

DayRun run_day(const DayPair& day, const GatewayConfig& config, const Threshold& theta,
               const SimulationSettings& settings) {
    return simulate(DayContext(day, settings), config, theta, settings);
}

EnergyRange min_max_energy(const DayContext& day, Approach approach, const SimulationSettings& settings) {
    const auto low = baseline_config(approach, Strategy::AlwaysLow);
    const auto high = baseline_config(approach, Strategy::AlwaysHigh);
    return {simulate(day, low, std::nullopt, settings).total_energy, simulate(day, high, std::nullopt, settings).total_energy};
}

EnergyRange min_max_energy(std::span<const DayContext> days, Approach approach, const SimulationSettings& settings) {
    EnergyRange total;
    for (const auto& day : days) {
        const auto r = min_max_energy(day, approach, settings);
        total.e_min += r.e_min;
        total.e_max += r.e_max;
    }
    return total;
}

void write_run_report(std::span<const IntervalRecord> records, std::ostream& out) {
    out << "interval,plan,measurements,avg,energy_j,prediction,true_label\n";
    for (const auto& r : records) {
        out << r.interval << ',' << to_string(r.plan) << ',' << r.usage.measurements << ','
            << format_number(r.reported_average) << ',' << format_number(r.energy) << ',' << to_string(r.prediction)
            << ',' << to_string(r.true_label) << '\n';
    }
}

}  // namespace wsnx
