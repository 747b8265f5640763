#pragma once
// Static SVG charts. Output depends only on the inputs, so files are
// byte-stable across runs.

#include <iosfwd>
#include <span>

#include "wsnx/evaluation.hpp"

namespace wsnx {

/// Humidity and temperature window averages of one day; windows whose
/// humidity delta is above theta get a blue background band.
void plot_trace_day(const DayContext& day, const Threshold& theta, std::ostream& out);

/// Heat map of mean p over the (sigma_rh, sigma_t) grid. Cells without a
/// defined p are drawn grey.
void plot_grid_heatmap(std::span<const GridCell> grid, std::ostream& out);

/// Grouped bars of e_ps, p_high, accuracy and p per strategy row.
void plot_score_bars(std::span<const SummaryRow> rows, std::ostream& out);

}  // namespace wsnx
