#include "wsnx/predictor.hpp"

#include <array>

namespace wsnx {

namespace {

using L = DeltaLabel;
constexpr std::optional<DeltaLabel> kAny = std::nullopt;

constexpr std::array<ReactionRow, 9> kRows{{
    {L::Low, L::Low, kAny, L::Low},
    {L::HighPlus, L::HighPlus, kAny, L::HighPlus},
    {L::HighMinus, L::HighMinus, kAny, L::HighMinus},
    {L::HighPlus, kAny, L::HighPlus, L::HighPlus},
    {L::HighMinus, kAny, L::HighMinus, L::HighMinus},
    {L::Low, kAny, L::Low, L::Low},
    {L::HighPlus, L::HighMinus, L::Low, L::Low},
    {L::HighPlus, L::Low, L::HighMinus, L::Low},
    {L::HighMinus, L::Low, L::HighPlus, L::Low},
}};

constexpr bool matches(const std::optional<DeltaLabel>& pattern, DeltaLabel value) {
    return !pattern || *pattern == value;
}

DeltaLabel agreement_rule(DeltaLabel newer, DeltaLabel older, DeltaLabel last) {
    if (newer == older || newer == last) return newer;
    if (older == last) return older;
    return DeltaLabel::Low;
}

}  // namespace

std::string_view to_string(CombinedLabel label) noexcept { return label == CombinedLabel::High ? "high" : "low"; }

std::span<const ReactionRow> reaction_rows() noexcept { return kRows; }

std::optional<std::size_t> matching_row(DeltaLabel newer, DeltaLabel older, DeltaLabel last_prediction) noexcept {
    for (std::size_t i = 0; i < kRows.size(); ++i) {
        const auto& row = kRows[i];
        if (matches(row.newer, newer) && matches(row.older, older) && matches(row.last_prediction, last_prediction)) {
            return i;
        }
    }
    return std::nullopt;
}

DeltaLabel predict(DeltaLabel newer, DeltaLabel older, DeltaLabel last_prediction) noexcept {
    if (const auto row = matching_row(newer, older, last_prediction)) return kRows[*row].prediction;
    return agreement_rule(newer, older, last_prediction);
}

std::pair<PredictorState, Prediction> step(const PredictorState& state, DeltaLabel new_symptom) noexcept {
    const DeltaLabel label = predict(new_symptom, state.newer, state.last_prediction);
    PredictorState next = state;
    next.older = state.newer;
    next.newer = new_symptom;
    next.last_prediction = label;
    return {next, Prediction{label, state.metric}};
}

CombinedLabel combine(std::span<const Prediction> predictions) {
    if (predictions.empty()) throw Error(Errc::EmptyInput, "nothing to combine");
    for (const auto& p : predictions) {
        if (is_high(p.label)) return CombinedLabel::High;
    }
    return CombinedLabel::Low;
}

std::string resolved_table_csv() {
    constexpr std::array<DeltaLabel, 3> labels{L::Low, L::HighPlus, L::HighMinus};
    std::string out = "newer,older,last_prediction,prediction,rule\n";
    for (auto newer : labels) {
        for (auto older : labels) {
            for (auto last : labels) {
                const auto row = matching_row(newer, older, last);
                out += std::string(to_string(newer)) + ',' + std::string(to_string(older)) + ',' +
                       std::string(to_string(last)) + ',' + std::string(to_string(predict(newer, older, last))) + ',' +
                       (row ? "row " + std::to_string(*row + 1) : std::string("agreement")) + '\n';
            }
        }
    }
    return out;
}

}  // namespace wsnx
