#include "wsnx/gateway.hpp"

#include <algorithm>
#include <cmath>

#include "wsnx/numfmt.hpp"

namespace wsnx {

std::string encode_message(const EgMessage& m) {
    std::string out = "EG1 ";
    out += m.source;
    out += ' ';
    out += to_string(m.metric);
    out += ' ';
    out += std::to_string(m.window_index);
    out += ' ';
    out += format_number(m.average);
    return out;
}

EgMessage decode_message(std::string_view line) {
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);

    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const auto space = line.find(' ', pos);
        const auto end = space == std::string_view::npos ? line.size() : space;
        tokens.push_back(line.substr(pos, end - pos));
        if (space == std::string_view::npos) break;
        pos = space + 1;
    }
    if (tokens.empty() || tokens[0].empty()) throw Error(Errc::ParseError, "empty message");
    if (tokens[0].size() >= 3 && tokens[0].substr(0, 2) == "EG" && tokens[0] != "EG1") {
        throw Error(Errc::UnknownVersion, "unsupported message version '" + std::string(tokens[0]) + "'");
    }
    if (tokens[0] != "EG1") throw Error(Errc::ParseError, "missing EG1 tag");
    if (tokens.size() != 5) throw Error(Errc::ParseError, "expected 5 space-separated fields");
    for (const auto& t : tokens) {
        if (t.empty()) throw Error(Errc::ParseError, "empty field");
    }

    EgMessage m;
    m.source = std::string(tokens[1]);
    const auto metric = parse_metric(tokens[2]);
    if (!metric) throw Error(Errc::ParseError, "unknown metric '" + std::string(tokens[2]) + "'");
    m.metric = *metric;
    const auto index = parse_unsigned(tokens[3]);
    if (!index || *index > static_cast<unsigned long long>(INT64_MAX)) throw Error(Errc::ParseError, "bad window index");
    m.window_index = static_cast<std::int64_t>(*index);
    const auto avg = parse_number(tokens[4]);
    if (!avg || !std::isfinite(*avg)) throw Error(Errc::ParseError, "bad average '" + std::string(tokens[4]) + "'");
    m.average = *avg;
    return m;
}

GatewayState make_gateway(const GatewayConfig& config) {
    for (const auto* sigma : {&config.sigma_internal, &config.sigma_external}) {
        if (*sigma && !(*sigma)->calibrated()) throw Error(Errc::UncalibratedThreshold, "symptom threshold not calibrated");
    }
    GatewayState state;
    state.config = config;
    const Metric external_metric =
        config.internal_metric == Metric::Temperature ? Metric::RelativeHumidity : Metric::Temperature;
    if (config.sigma_internal) state.internal_predictor = PredictorState{config.internal_metric};
    if (config.sigma_external) state.external_predictor = PredictorState{external_metric};
    state.current_plan =
        config.strategy == Strategy::AlwaysHigh ? high_plan(config.approach) : initial_low_plan(config.approach);
    return state;
}

PlanKind select_plan(GatewayState& state, CombinedLabel combined) {
    if (combined == CombinedLabel::High) return high_plan(state.config.approach);
    if (state.config.approach == Approach::Intervals) return PlanKind::SlowInterval;
    state.last_half = state.last_half == PlanKind::HalfSetA ? PlanKind::HalfSetB : PlanKind::HalfSetA;
    return state.last_half;
}

namespace {

// Steps `predictor` on the delta between two consecutive window averages.
Prediction advance(PredictorState& predictor, const Threshold& sigma, double previous, double current) {
    const auto symptom = detect_symptom(std::fabs(current - previous), trend_of(previous, current), sigma);
    auto [next, prediction] = step(predictor, symptom);
    predictor = next;
    return prediction;
}

}  // namespace

std::pair<GatewayState, WindowDecision> on_window_close(GatewayState state, double internal_avg,
                                                        std::span<const EgMessage> external) {
    const std::int64_t window = state.window_index;
    WindowDecision decision;

    if (state.internal_predictor && state.last_internal) {
        decision.internal = advance(*state.internal_predictor, *state.config.sigma_internal, *state.last_internal, internal_avg);
    }
    state.last_internal = internal_avg;

    std::vector<EgMessage> inbox;
    inbox.swap(state.pending);
    inbox.insert(inbox.end(), external.begin(), external.end());

    std::optional<EgMessage> current;
    for (auto& msg : inbox) {
        auto& last_seen = state.last_window_by_source.try_emplace(msg.source + '/' + std::string(to_string(msg.metric)), -1)
                              .first->second;
        if (msg.window_index > window) {
            state.pending.push_back(std::move(msg));
            continue;
        }
        if (msg.window_index < window || msg.window_index <= last_seen) {
            ++state.stale_dropped;
            continue;
        }
        last_seen = msg.window_index;
        if (!state.external_predictor || msg.metric != state.external_predictor->metric || current) {
            ++state.ignored;
            continue;
        }
        current = std::move(msg);
    }

    if (current) {
        if (state.last_external && state.last_external_window == window - 1) {
            decision.external =
                advance(*state.external_predictor, *state.config.sigma_external, *state.last_external, current->average);
        }
        state.last_external = current->average;
        state.last_external_window = window;
    }

    std::vector<Prediction> members;
    if (decision.internal) members.push_back(*decision.internal);
    if (decision.external) members.push_back(*decision.external);
    decision.combined = members.empty() ? CombinedLabel::Low : combine(members);

    // baselines ignore the predictors and report their pinned label
    if (state.config.strategy == Strategy::AlwaysHigh) decision.combined = CombinedLabel::High;
    if (state.config.strategy == Strategy::AlwaysLow) decision.combined = CombinedLabel::Low;
    decision.next_plan = select_plan(state, decision.combined);
    state.current_plan = decision.next_plan;
    state.window_index = window + 1;
    return {std::move(state), decision};
}

}  // namespace wsnx
