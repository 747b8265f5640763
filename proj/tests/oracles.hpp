#pragma once
// Independent reference answers shared by the unit tests and the acceptance run.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>

#include "wsnx/simulator.hpp"

namespace wsnx::oracle {

struct TableEntry {
    DeltaLabel newer, older, last, expected;
};

// All 27 (newer symptom, older symptom, last prediction) triples, written out
// by hand: the nine listed rows first, the rest by two-of-three agreement
// (Low when all three differ).
inline constexpr auto kL = DeltaLabel::Low;
inline constexpr auto kP = DeltaLabel::HighPlus;
inline constexpr auto kM = DeltaLabel::HighMinus;
inline constexpr std::array<TableEntry, 27> kPredictorTable{{
    {kL, kL, kL, kL}, {kL, kL, kP, kL}, {kL, kL, kM, kL},
    {kL, kP, kL, kL}, {kL, kP, kP, kP}, {kL, kP, kM, kL},
    {kL, kM, kL, kL}, {kL, kM, kP, kL}, {kL, kM, kM, kM},
    {kP, kL, kL, kL}, {kP, kL, kP, kP}, {kP, kL, kM, kL},
    {kP, kP, kL, kP}, {kP, kP, kP, kP}, {kP, kP, kM, kP},
    {kP, kM, kL, kL}, {kP, kM, kP, kP}, {kP, kM, kM, kM},
    {kM, kL, kL, kL}, {kM, kL, kP, kL}, {kM, kL, kM, kM},
    {kM, kP, kL, kL}, {kM, kP, kP, kP}, {kM, kP, kM, kM},
    {kM, kM, kL, kM}, {kM, kM, kP, kM}, {kM, kM, kM, kM},
}};

// The nine listed rows as concrete literal cases: (newer, older, last) -> prediction,
// one representative per row with the wildcard resolved to a value no earlier row matches.
inline constexpr std::array<TableEntry, 9> kListedRows{{
    {kL, kL, kP, kL},  // 1: Low, Low, any
    {kP, kP, kM, kP},  // 2: High+, High+, any
    {kM, kM, kP, kM},  // 3: High-, High-, any
    {kP, kM, kP, kP},  // 4: High+, any, High+
    {kM, kL, kM, kM},  // 5: High-, any, High-
    {kL, kP, kL, kL},  // 6: Low, any, Low
    {kP, kM, kL, kL},  // 7
    {kP, kL, kM, kL},  // 8
    {kM, kL, kP, kL},  // 9
}};

struct Confusion {
    std::size_t high_covered = 0;  // true High, high-information plan
    std::size_t high_missed = 0;   // true High, low plan
    std::size_t low_wasted = 0;    // true Low, high-information plan
    std::size_t low_saved = 0;     // true Low, low plan
};

inline Confusion count(std::span<const IntervalRecord> log) {
    Confusion c;
    for (const auto& r : log) {
        const bool t = r.true_label != DeltaLabel::Low;
        const bool p = r.plan == PlanKind::AllNodes || r.plan == PlanKind::FastInterval;
        (t ? (p ? c.high_covered : c.high_missed) : (p ? c.low_wasted : c.low_saved)) += 1;
    }
    return c;
}

/// e^a * p^(1-a) through logarithms, with 0^0 = 1.
inline double score(double e, double p, double a) {
    auto term = [](double x, double k) { return k == 0.0 ? 1.0 : (x == 0.0 ? 0.0 : std::exp(k * std::log(x))); };
    return term(e, a) * term(p, 1.0 - a);
}

/// Closed-form energy of a run from its plan sequence alone.
inline double schedule_energy(std::span<const IntervalRecord> log, std::size_t nodes, const SimulationSettings& s) {
    double samples = 0.0;
    double updates = 0.0;
    for (std::size_t w = 0; w < log.size(); ++w) {
        samples += static_cast<double>(log[w].usage.measurements);
        if (w > 0 && log[w].plan != log[w - 1].plan) updates += 1.0;
    }
    return samples * s.energy.e_measure + samples * s.energy.e_tx +
           static_cast<double>(nodes) * 86400.0 * s.energy.e_idle + updates * s.energy.e_update;
}

}  // namespace wsnx::oracle
