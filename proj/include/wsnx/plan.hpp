#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wsnx/trace.hpp"

namespace wsnx {

enum class Approach : std::uint8_t { NodeSets, Intervals };

enum class PlanKind : std::uint8_t { HalfSetA, HalfSetB, AllNodes, FastInterval, SlowInterval };

/// How the gateway picks plans: from predictions, or pinned to one extreme.
enum class Strategy : std::uint8_t { Predictive, AlwaysLow, AlwaysHigh };

std::string_view to_string(Approach approach) noexcept;  // "node-sets" / "intervals"
std::optional<Approach> parse_approach(std::string_view text) noexcept;
std::string_view to_string(PlanKind plan) noexcept;
std::string_view to_string(Strategy strategy) noexcept;

constexpr bool is_high_information(PlanKind plan) noexcept {
    return plan == PlanKind::AllNodes || plan == PlanKind::FastInterval;
}

constexpr PlanKind high_plan(Approach approach) noexcept {
    return approach == Approach::NodeSets ? PlanKind::AllNodes : PlanKind::FastInterval;
}

/// Low-energy plan a network starts in.
constexpr PlanKind initial_low_plan(Approach approach) noexcept {
    return approach == Approach::NodeSets ? PlanKind::HalfSetA : PlanKind::SlowInterval;
}

struct PlanSettings {
    double node_sets_interval = 30.0;  // sensing interval under the node-set plans
    double fast_interval = 30.0;
    double slow_interval = 180.0;
};

struct NodeConfig {
    NodeId node_id = 0;
    bool active = false;
    double sensing_interval = 0.0;

    bool operator==(const NodeConfig&) const = default;
};

/// Position i in the ascending node list belongs to half-set A iff i is even,
/// so the halves interleave and differ in size by at most one.
constexpr bool in_half_set_a(std::size_t position) noexcept { return position % 2 == 0; }

bool node_active(PlanKind plan, std::size_t position) noexcept;
double sensing_interval(PlanKind plan, const PlanSettings& settings) noexcept;

std::vector<NodeConfig> node_configs(PlanKind plan, std::span<const NodeId> nodes, const PlanSettings& settings);

}  // namespace wsnx
