#pragma once
// CSV tables of calibration and cross-validation results. Numbers are written
// in shortest round-trip form; undefined scores are empty cells.

#include <iosfwd>
#include <span>

#include "wsnx/evaluation.hpp"

namespace wsnx {

/// `sigma_rh,sigma_t,e_ps,p_high,accuracy,qom_good,p`
void write_grid_csv(std::span<const GridCell> grid, std::ostream& out);

/// One row per split and strategy, with the chosen percentiles.
void write_splits_csv(std::span<const SplitResult> splits, std::ostream& out);

/// `theta,strategy,energy_j,energy_vs_max,e_ps,p_high,accuracy,qom_good,p`
void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out);

}  // namespace wsnx
