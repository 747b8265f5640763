#include "wsnx/report.hpp"

#include <optional>
#include <ostream>
#include <string>

#include "wsnx/numfmt.hpp"

namespace wsnx {

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }
std::string cell(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }

}  // namespace

void write_grid_csv(std::span<const GridCell> grid, std::ostream& out) {
    out << "sigma_rh,sigma_t,e_ps,p_high,accuracy,qom_good,p\n";
    for (const auto& c : grid) {
        out << cell(c.sigma_rh_percentile) << ',' << cell(c.sigma_t_percentile) << ',' << format_number(c.scores.e_ps)
            << ',' << cell(c.scores.p_high) << ',' << format_number(c.scores.accuracy) << ','
            << format_number(c.scores.qom_good) << ',' << cell(c.scores.p) << '\n';
    }
}

void write_splits_csv(std::span<const SplitResult> splits, std::ostream& out) {
    out << "split,theta,theta_value,strategy,sigma_rh,sigma_t,energy_j,e_ps,p_high,accuracy,qom_good,p\n";
    for (const auto& s : splits) {
        for (const auto& o : s.outcomes) {
            out << s.split_index << ',' << s.theta.percentile << ',' << format_number(s.theta.value) << ','
                << to_string(o.row) << ',' << cell(o.sigma_rh_percentile) << ',' << cell(o.sigma_t_percentile) << ','
                << format_number(o.validation.energy_j) << ',' << format_number(o.validation.e_ps) << ','
                << cell(o.validation.p_high) << ',' << format_number(o.validation.accuracy) << ','
                << format_number(o.validation.qom_good) << ',' << cell(o.validation.p) << '\n';
        }
    }
}

void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out) {
    out << "theta,strategy,energy_j,energy_vs_max,e_ps,p_high,accuracy,qom_good,p\n";
    for (const auto& r : rows) {
        out << r.theta_percentile << ',' << to_string(r.row) << ',' << format_number(r.energy_j) << ','
            << format_number(r.energy_vs_max) << ',' << format_number(r.e_ps) << ',' << cell(r.p_high) << ','
            << format_number(r.accuracy) << ',' << format_number(r.qom_good) << ',' << cell(r.p) << '\n';
    }
}

}  // namespace wsnx
