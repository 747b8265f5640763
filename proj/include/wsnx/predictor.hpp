#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "wsnx/delta.hpp"

namespace wsnx {

/// Three-factor memory of one metric's change predictor. Factors that have
/// not been observed yet count as Low.
struct PredictorState {
    Metric metric = Metric::RelativeHumidity;
    DeltaLabel older = DeltaLabel::Low;  // symptom before the newest one
    DeltaLabel newer = DeltaLabel::Low;  // most recent symptom
    DeltaLabel last_prediction = DeltaLabel::Low;

    bool operator==(const PredictorState&) const = default;
};

struct Prediction {
    DeltaLabel label = DeltaLabel::Low;
    Metric metric = Metric::RelativeHumidity;

    bool operator==(const Prediction&) const = default;
};

enum class CombinedLabel : std::uint8_t { Low, High };

std::string_view to_string(CombinedLabel label) noexcept;  // "low" / "high"

/// One row of the symptom reaction table; nullopt is the "any" wildcard.
struct ReactionRow {
    std::optional<DeltaLabel> newer;
    std::optional<DeltaLabel> older;
    std::optional<DeltaLabel> last_prediction;
    DeltaLabel prediction;
};

/// The nine published rows, in their listed order.
std::span<const ReactionRow> reaction_rows() noexcept;

/// Index of the first listed row matching the triple, or nullopt when no row does.
std::optional<std::size_t> matching_row(DeltaLabel newer, DeltaLabel older, DeltaLabel last_prediction) noexcept;

/// First matching listed row wins. Triples no row lists fall back to the
/// agreement rule: if two of the three factors carry the same label, predict
/// it; if all three differ, predict Low.
DeltaLabel predict(DeltaLabel newer, DeltaLabel older, DeltaLabel last_prediction) noexcept;

/// Feeds one new symptom. The returned state has the symptoms shifted and
/// remembers the returned prediction.
std::pair<PredictorState, Prediction> step(const PredictorState& state, DeltaLabel new_symptom) noexcept;

/// High iff any member prediction is HighPlus or HighMinus. Throws EmptyInput.
CombinedLabel combine(std::span<const Prediction> predictions);

/// All 27 triples as CSV (newer,older,last_prediction,prediction,rule), for audit.
std::string resolved_table_csv();

}  // namespace wsnx
