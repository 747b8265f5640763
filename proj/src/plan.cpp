#include "wsnx/plan.hpp"

namespace wsnx {

std::string_view to_string(Approach approach) noexcept {
    return approach == Approach::NodeSets ? "node-sets" : "intervals";
}

std::optional<Approach> parse_approach(std::string_view text) noexcept {
    if (text == "node-sets") return Approach::NodeSets;
    if (text == "intervals") return Approach::Intervals;
    return std::nullopt;
}

std::string_view to_string(PlanKind plan) noexcept {
    switch (plan) {
        case PlanKind::HalfSetA: return "half_a";
        case PlanKind::HalfSetB: return "half_b";
        case PlanKind::AllNodes: return "all_nodes";
        case PlanKind::FastInterval: return "fast";
        case PlanKind::SlowInterval: return "slow";
    }
    return "?";
}

std::string_view to_string(Strategy strategy) noexcept {
    switch (strategy) {
        case Strategy::Predictive: return "predictive";
        case Strategy::AlwaysLow: return "always_low";
        case Strategy::AlwaysHigh: return "always_high";
    }
    return "?";
}

bool node_active(PlanKind plan, std::size_t position) noexcept {
    switch (plan) {
        case PlanKind::HalfSetA: return in_half_set_a(position);
        case PlanKind::HalfSetB: return !in_half_set_a(position);
        default: return true;
    }
}

double sensing_interval(PlanKind plan, const PlanSettings& settings) noexcept {
    switch (plan) {
        case PlanKind::FastInterval: return settings.fast_interval;
        case PlanKind::SlowInterval: return settings.slow_interval;
        default: return settings.node_sets_interval;
    }
}

std::vector<NodeConfig> node_configs(PlanKind plan, std::span<const NodeId> nodes, const PlanSettings& settings) {
    std::vector<NodeConfig> configs;
    configs.reserve(nodes.size());
    const double interval = sensing_interval(plan, settings);
    for (std::size_t i = 0; i < nodes.size(); ++i) configs.push_back({nodes[i], node_active(plan, i), interval});
    return configs;
}

}  // namespace wsnx
