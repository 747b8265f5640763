#pragma once
// Enhanced Gateway (EG) of the adaptive network: collects its sink's window
// averages, takes averages forwarded by peer EGs, predicts the next window per
// metric and chooses the plan the sink pushes to the nodes.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wsnx/delta.hpp"
#include "wsnx/plan.hpp"
#include "wsnx/predictor.hpp"

namespace wsnx {

struct EgMessage {
    std::string source;  // network identifier, no whitespace
    Metric metric = Metric::Temperature;
    std::int64_t window_index = 0;
    double average = 0.0;

    bool operator==(const EgMessage&) const = default;
};

/// `EG1 <source> <metric> <window_index> <average>`, no trailing newline.
/// The average is written in shortest round-trip form.
std::string encode_message(const EgMessage& message);

/// Accepts one line (a trailing "\r\n" or "\n" is ignored). Throws
/// UnknownVersion for a tag other than EG1 and ParseError otherwise.
EgMessage decode_message(std::string_view line);

struct GatewayConfig {
    Approach approach = Approach::NodeSets;
    Strategy strategy = Strategy::Predictive;
    Metric internal_metric = Metric::RelativeHumidity;
    std::optional<Threshold> sigma_internal;  // predictor on the local sink's averages
    std::optional<Threshold> sigma_external;  // predictor on the peer's averages
};

struct GatewayState {
    GatewayConfig config;
    std::int64_t window_index = 0;  // next window to close

    std::optional<double> last_internal;
    std::optional<double> last_external;
    std::int64_t last_external_window = -1;

    std::optional<PredictorState> internal_predictor;
    std::optional<PredictorState> external_predictor;

    PlanKind current_plan = PlanKind::HalfSetA;
    PlanKind last_half = PlanKind::HalfSetA;

    std::map<std::string, std::int64_t> last_window_by_source;
    std::vector<EgMessage> pending;  // messages for windows not closed yet
    std::size_t stale_dropped = 0;
    std::size_t ignored = 0;  // messages for a metric no predictor uses
};

/// A gateway pinned to one plan extreme; it runs no predictor.
inline GatewayConfig baseline_config(Approach approach, Strategy strategy) {
    GatewayConfig config;
    config.approach = approach;
    config.strategy = strategy;
    return config;
}

/// Throws UncalibratedThreshold if a configured sigma is not calibrated.
GatewayState make_gateway(const GatewayConfig& config);

struct WindowDecision {
    PlanKind next_plan = PlanKind::HalfSetA;
    CombinedLabel combined = CombinedLabel::Low;
    std::optional<Prediction> internal;
    std::optional<Prediction> external;
};

/// Closes window `state.window_index`: appends the local average, applies the
/// peer messages for that window, steps each predictor that has a fresh delta,
/// combines and selects the next plan. Messages older than the closing window
/// (or repeats for it) are dropped and counted in stale_dropped; messages for
/// later windows wait in `pending`. A window without a peer message simply
/// skips the external predictor.
std::pair<GatewayState, WindowDecision> on_window_close(GatewayState state, double internal_avg,
                                                        std::span<const EgMessage> external);

/// Plan that follows a combined prediction, alternating half-sets on Low.
PlanKind select_plan(GatewayState& state, CombinedLabel combined);

}  // namespace wsnx
