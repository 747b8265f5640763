#include "wsnx/plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>

namespace wsnx {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 360.0;
constexpr double kMargin = 50.0;

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void open_svg(std::ostream& out, double width, double height) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width) << "\" height=\"" << fixed(height)
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void text(std::ostream& out, double x, double y, const std::string& s, const char* anchor = "start") {
    out << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(y) << "\" text-anchor=\"" << anchor << "\">" << s
        << "</text>\n";
}

struct Scale {
    double lo = 0.0;
    double hi = 1.0;
    double px_lo = 0.0;
    double px_hi = 1.0;

    double operator()(double v) const {
        const double span = hi > lo ? hi - lo : 1.0;
        return px_lo + (v - lo) / span * (px_hi - px_lo);
    }
};

Scale value_scale(std::span<const double> values, double px_bottom, double px_top) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    double lo = *mn;
    double hi = *mx;
    if (hi - lo < 1e-9) {
        lo -= 0.5;
        hi += 0.5;
    }
    return {lo, hi, px_bottom, px_top};
}

void polyline(std::ostream& out, std::span<const double> values, const Scale& x, const Scale& y, const char* color) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out << ' ';
        out << fixed(x(static_cast<double>(i) + 0.5)) << ',' << fixed(y(values[i]));
    }
    out << "\"/>\n";
}

// white -> dark green
std::string ramp_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const int r = static_cast<int>(255 - 220 * t);
    const int g = static_cast<int>(255 - 120 * t);
    const int b = static_cast<int>(255 - 200 * t);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace

void plot_trace_day(const DayContext& day, const Threshold& theta, std::ostream& out) {
    const auto& rh = day.humidity();
    const auto& temp = day.temperature();
    const std::size_t n = day.windows();
    const auto labels = label_series(rh, theta);

    const double top = kMargin;
    const double bottom = kHeight - kMargin;
    const Scale x{0.0, static_cast<double>(n), kMargin, kWidth - kMargin};
    open_svg(out, kWidth, kHeight);
    // label i belongs to the change into window i + 1
    for (std::size_t i = 0; i < labels.size() && i + 1 < n; ++i) {
        if (!is_high(labels[i])) continue;
        out << "<rect x=\"" << fixed(x(static_cast<double>(i + 1))) << "\" y=\"" << fixed(top) << "\" width=\""
            << fixed(x(1.0) - x(0.0)) << "\" height=\"" << fixed(bottom - top) << "\" fill=\"#cfe2ff\"/>\n";
    }
    const std::span<const double> rh_avg(rh.averages.data(), n);
    const std::span<const double> t_avg(temp.averages.data(), n);
    polyline(out, rh_avg, x, value_scale(rh_avg, bottom, top), "#1f4e9c");
    polyline(out, t_avg, x, value_scale(t_avg, bottom, top), "#c0392b");
    out << "<rect x=\"" << fixed(kMargin) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(kWidth - 2 * kMargin)
        << "\" height=\"" << fixed(bottom - top) << "\" fill=\"none\" stroke=\"black\"/>\n";
    text(out, kMargin, top - 20, "day " + std::to_string(day.day_index()) + ": relative humidity (blue), temperature (red)");
    text(out, kMargin, top - 6, "shaded: humidity delta above theta_" + std::to_string(theta.percentile));
    for (int h = 0; h <= 24; h += 6) {
        const double px = x(h * 3600.0 / day.window_length());
        text(out, px, bottom + 16, std::to_string(h) + "h", "middle");
    }
    out << "</svg>\n";
}

void plot_grid_heatmap(std::span<const GridCell> grid, std::ostream& out) {
    std::map<int, std::size_t> rows;  // sigma_rh percentile -> row
    std::map<int, std::size_t> cols;  // sigma_t percentile -> column
    for (const auto& c : grid) {
        rows.emplace(c.sigma_rh_percentile.value_or(-1), 0);
        cols.emplace(c.sigma_t_percentile.value_or(-1), 0);
    }
    std::size_t k = 0;
    for (auto& [_, i] : rows) i = k++;
    k = 0;
    for (auto& [_, i] : cols) i = k++;

    double p_lo = 1.0;
    double p_hi = 0.0;
    for (const auto& c : grid) {
        if (!c.scores.p) continue;
        p_lo = std::min(p_lo, *c.scores.p);
        p_hi = std::max(p_hi, *c.scores.p);
    }
    const double cell = 40.0;
    const double left = 90.0;
    const double top = 50.0;
    const double width = left + cell * static_cast<double>(cols.size()) + 30.0;
    const double height = top + cell * static_cast<double>(rows.size()) + 50.0;
    open_svg(out, width, height);
    text(out, left, 20, "mean p over the symptom threshold grid");
    for (const auto& c : grid) {
        const double cx = left + cell * static_cast<double>(cols.at(c.sigma_t_percentile.value_or(-1)));
        const double cy = top + cell * static_cast<double>(rows.at(c.sigma_rh_percentile.value_or(-1)));
        const std::string fill = c.scores.p ? ramp_color(p_hi > p_lo ? (*c.scores.p - p_lo) / (p_hi - p_lo) : 1.0)
                                            : std::string("#bbbbbb");
        out << "<rect x=\"" << fixed(cx) << "\" y=\"" << fixed(cy) << "\" width=\"" << fixed(cell) << "\" height=\""
            << fixed(cell) << "\" fill=\"" << fill << "\" stroke=\"white\"/>\n";
        if (c.scores.p) text(out, cx + cell / 2, cy + cell / 2 + 4, fixed(*c.scores.p), "middle");
    }
    for (const auto& [pct, i] : rows) {
        text(out, left - 6, top + cell * (static_cast<double>(i) + 0.5) + 4, pct < 0 ? "-" : std::to_string(pct), "end");
    }
    for (const auto& [pct, i] : cols) {
        text(out, left + cell * (static_cast<double>(i) + 0.5), top + cell * static_cast<double>(rows.size()) + 16,
             pct < 0 ? "-" : std::to_string(pct), "middle");
    }
    text(out, 10, top - 8, "sigma_rh");
    text(out, left, height - 10, "sigma_t percentile");
    out << "</svg>\n";
}

void plot_score_bars(std::span<const SummaryRow> rows, std::ostream& out) {
    static constexpr std::array<const char*, 4> kNames{"e_ps", "p_high", "accuracy", "p"};
    static constexpr std::array<const char*, 4> kColors{"#4c72b0", "#dd8452", "#55a868", "#c44e52"};
    const double bar = 14.0;
    const double gap = 24.0;
    const double group = bar * 4 + gap;
    const double top = kMargin;
    const double bottom = kHeight - kMargin;
    const double width = kMargin * 2 + group * static_cast<double>(rows.size());
    const Scale y{0.0, 1.0, bottom, top};
    open_svg(out, width, kHeight);
    for (std::size_t m = 0; m < kNames.size(); ++m) {
        const double lx = kMargin + 90.0 * static_cast<double>(m);
        out << "<rect x=\"" << fixed(lx) << "\" y=\"" << fixed(top - 24) << "\" width=\"10\" height=\"10\" fill=\""
            << kColors[m] << "\"/>\n";
        text(out, lx + 14, top - 15, kNames[m]);
    }
    for (double tick : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        out << "<line x1=\"" << fixed(kMargin) << "\" y1=\"" << fixed(y(tick)) << "\" x2=\"" << fixed(width - kMargin)
            << "\" y2=\"" << fixed(y(tick)) << "\" stroke=\"#dddddd\"/>\n";
        text(out, kMargin - 6, y(tick) + 4, fixed(tick), "end");
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::array<double, 4> values{row.e_ps, row.p_high.value_or(0.0), row.accuracy, row.p.value_or(0.0)};
        const double gx = kMargin + group * static_cast<double>(r) + gap / 2;
        for (std::size_t m = 0; m < values.size(); ++m) {
            const double h = bottom - y(values[m]);
            out << "<rect x=\"" << fixed(gx + bar * static_cast<double>(m)) << "\" y=\"" << fixed(bottom - h)
                << "\" width=\"" << fixed(bar) << "\" height=\"" << fixed(h) << "\" fill=\"" << kColors[m] << "\"/>\n";
        }
        text(out, gx + bar * 2, bottom + 14, std::string(to_string(row.row)), "middle");
        text(out, gx + bar * 2, bottom + 28, "theta_" + std::to_string(row.theta_percentile), "middle");
    }
    out << "<line x1=\"" << fixed(kMargin) << "\" y1=\"" << fixed(bottom) << "\" x2=\"" << fixed(width - kMargin)
        << "\" y2=\"" << fixed(bottom) << "\" stroke=\"black\"/>\n";
    out << "</svg>\n";
}

}  // namespace wsnx
