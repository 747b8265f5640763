#pragma once
// Small hand-built days for tests that need exact control over the traces.

#include <functional>
#include <vector>

#include "wsnx/simulator.hpp"
#include "wsnx/trace.hpp"

namespace wsnx::fixtures {

/// value(node_position, seconds_since_day_start)
using Shape = std::function<double(std::size_t, double)>;

inline Trace make_trace(Metric metric, int day, std::size_t nodes, NodeId first_id, double cadence, const Shape& value) {
    std::vector<Measurement> rows;
    const double origin = day * kSecondsPerDay;
    for (double t = 0.0; t < kSecondsPerDay; t += cadence) {
        for (std::size_t n = 0; n < nodes; ++n) {
            rows.push_back({origin + t, static_cast<NodeId>(first_id + n), metric, value(n, t)});
        }
    }
    return Trace(metric, day, std::move(rows));
}

inline DayPair make_day(int day, std::size_t rh_nodes, const Shape& rh, const Shape& temp, double cadence = 30.0) {
    return DayPair{make_trace(Metric::Temperature, day, 1, 0, cadence, temp),
                   make_trace(Metric::RelativeHumidity, day, rh_nodes, 1, cadence, rh)};
}

inline DayPair constant_day(int day = 0, std::size_t rh_nodes = 4, double rh = 50.0, double temp = 20.0) {
    return make_day(day, rh_nodes, [rh](std::size_t, double) { return rh; }, [temp](std::size_t, double) { return temp; });
}

/// Synthetic days with few humidity nodes so tests stay fast.
inline Dataset small_dataset(int days, std::uint64_t seed, int rh_nodes = 12) {
    SynthesisParams params;
    params.humidity_nodes = rh_nodes;
    return synthesize_dataset(days, seed, params);
}

inline std::vector<DayContext> contexts(const Dataset& dataset, const SimulationSettings& settings = {}) {
    std::vector<DayContext> out;
    for (const auto& d : dataset.days) out.emplace_back(d, settings);
    return out;
}

}  // namespace wsnx::fixtures
