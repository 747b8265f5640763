#include "wsnx/trace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <unordered_map>

#include "wsnx/numfmt.hpp"
#include "wsnx/rng.hpp"

namespace wsnx {

namespace {

constexpr std::string_view kHeader = "timestamp_s,node_id,metric,value";

bool by_time_then_node(const Measurement& a, const Measurement& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.node_id < b.node_id;
}

int day_of(double timestamp) { return static_cast<int>(std::floor(timestamp / kSecondsPerDay)); }

struct ScannedRow {
    Measurement m;
    std::size_t line = 0;
};

// Parses one data row; returns an error message or empty string.
std::string parse_row(std::string_view text, Measurement& out) {
    std::string_view fields[4];
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (count == 4) return "expected 4 fields";
        fields[count++] = trim(piece);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (count != 4) return "expected 4 fields";

    const auto ts = parse_number(fields[0]);
    if (!ts || !std::isfinite(*ts)) return "bad timestamp '" + std::string(fields[0]) + "'";
    if (*ts < 0.0) return "negative timestamp";
    const auto node = parse_unsigned(fields[1]);
    if (!node || *node > UINT32_MAX) return "bad node_id '" + std::string(fields[1]) + "'";
    const auto metric = parse_metric(fields[2]);
    if (!metric) return "unknown metric '" + std::string(fields[2]) + "'";
    const auto value = parse_number(fields[3]);
    if (!value || !std::isfinite(*value)) return "bad value '" + std::string(fields[3]) + "'";
    if (!value_in_range(*metric, *value)) {
        return std::string(to_string(*metric)) + " value " + format_number(*value) + " out of range";
    }
    out = Measurement{*ts, static_cast<NodeId>(*node), *metric, *value};
    return {};
}

ValidationReport scan(std::istream& in, std::vector<ScannedRow>* accepted) {
    ValidationReport report;
    std::vector<ScannedRow> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;

    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (!header_seen) {
            header_seen = true;
            if (text != kHeader) {
                report.violations.push_back({line_no, Errc::MalformedRow, "missing header '" + std::string(kHeader) + "'"});
            }
            continue;
        }
        if (text.empty()) continue;
        ++report.rows;
        Measurement m;
        if (auto err = parse_row(text, m); !err.empty()) {
            report.violations.push_back({line_no, Errc::MalformedRow, std::move(err)});
            continue;
        }
        rows.push_back({m, line_no});
    }
    if (!header_seen) report.violations.push_back({1, Errc::MalformedRow, "empty file"});

    // duplicates: same node, metric and timestamp
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = rows[a];
        const auto& y = rows[b];
        if (x.m.metric != y.m.metric) return x.m.metric < y.m.metric;
        if (x.m.node_id != y.m.node_id) return x.m.node_id < y.m.node_id;
        if (x.m.timestamp != y.m.timestamp) return x.m.timestamp < y.m.timestamp;
        return x.line < y.line;
    });
    std::vector<bool> rejected(rows.size(), false);
    for (std::size_t k = 1; k < order.size(); ++k) {
        const auto& prev = rows[order[k - 1]].m;
        const auto& cur = rows[order[k]].m;
        if (prev.metric == cur.metric && prev.node_id == cur.node_id && prev.timestamp == cur.timestamp) {
            rejected[order[k]] = true;
            report.violations.push_back({rows[order[k]].line, Errc::MalformedRow,
                                         "duplicate timestamp " + format_number(cur.timestamp) + " for node " +
                                             std::to_string(cur.node_id)});
        }
    }

    // a node belongs to one network, so it may report only one metric per day
    std::unordered_map<std::uint64_t, Metric> node_metric;
    std::map<int, DayRowCount> days;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rejected[i]) continue;
        const auto& m = rows[i].m;
        const int day = day_of(m.timestamp);
        const auto key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(day)) << 32) | m.node_id;
        const auto [it, inserted] = node_metric.emplace(key, m.metric);
        if (!inserted && it->second != m.metric) {
            rejected[i] = true;
            report.violations.push_back({rows[i].line, Errc::MixedMetricDay,
                                         "node " + std::to_string(m.node_id) + " reports both metrics on day " +
                                             std::to_string(day)});
            continue;
        }
        auto& counts = days[day];
        counts.day_index = day;
        (m.metric == Metric::Temperature ? counts.temperature_rows : counts.humidity_rows) += 1;
    }
    for (const auto& [day, counts] : days) report.days.push_back(counts);

    std::stable_sort(report.violations.begin(), report.violations.end(),
                     [](const RowViolation& a, const RowViolation& b) { return a.line < b.line; });

    if (accepted != nullptr) {
        accepted->clear();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!rejected[i]) accepted->push_back(rows[i]);
        }
    }
    return report;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::Io, "cannot open '" + path.string() + "'");
    return in;
}

}  // namespace

std::string_view to_string(Metric metric) noexcept {
    return metric == Metric::Temperature ? "temperature" : "relative_humidity";
}

std::optional<Metric> parse_metric(std::string_view text) noexcept {
    if (text == "temperature") return Metric::Temperature;
    if (text == "relative_humidity") return Metric::RelativeHumidity;
    return std::nullopt;
}

bool value_in_range(Metric metric, double value) noexcept {
    if (metric == Metric::RelativeHumidity) return value >= 0.0 && value <= 100.0;
    return value >= -50.0 && value <= 100.0;
}

Trace::Trace(Metric metric, int day_index, std::vector<Measurement> measurements)
    : metric_(metric), day_index_(day_index), measurements_(std::move(measurements)) {
    if (day_index < 0) throw Error(Errc::InvalidParams, "negative day index");
    const double start = day_start();
    for (const auto& m : measurements_) {
        if (m.metric != metric) throw Error(Errc::InvalidParams, "measurement metric differs from trace metric");
        if (!(m.timestamp >= start && m.timestamp < start + kSecondsPerDay)) {
            throw Error(Errc::InvalidParams, "timestamp " + format_number(m.timestamp) + " outside day " +
                                                 std::to_string(day_index));
        }
        if (!std::isfinite(m.value) || !value_in_range(metric, m.value)) {
            throw Error(Errc::MalformedRow, std::string(to_string(metric)) + " value out of range");
        }
    }
    std::sort(measurements_.begin(), measurements_.end(), by_time_then_node);
    for (std::size_t i = 1; i < measurements_.size(); ++i) {
        const auto& a = measurements_[i - 1];
        const auto& b = measurements_[i];
        if (a.timestamp == b.timestamp && a.node_id == b.node_id) {
            throw Error(Errc::MalformedRow, "duplicate timestamp for node " + std::to_string(b.node_id));
        }
    }
}

std::vector<NodeId> Trace::node_ids() const {
    std::vector<NodeId> ids;
    ids.reserve(64);
    for (const auto& m : measurements_) ids.push_back(m.node_id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

std::vector<double> Trace::hold_grid(NodeId node, double step, std::size_t count) const {
    std::vector<double> grid(count, 0.0);
    const Measurement* first = nullptr;
    const Measurement* held = nullptr;
    std::size_t k = 0;
    const double start = day_start();
    for (const auto& m : measurements_) {
        if (m.node_id != node) continue;
        if (first == nullptr) first = &m;
        while (k < count && start + static_cast<double>(k) * step < m.timestamp) {
            grid[k] = (held != nullptr ? held : first)->value;
            ++k;
        }
        held = &m;
    }
    if (first == nullptr) throw Error(Errc::InvalidParams, "node " + std::to_string(node) + " has no measurements");
    for (; k < count; ++k) grid[k] = held->value;
    return grid;
}

std::size_t ValidationReport::complete_days() const noexcept {
    return static_cast<std::size_t>(std::count_if(days.begin(), days.end(), [](const auto& d) { return d.complete(); }));
}

ValidationReport validate_data(std::istream& in) { return scan(in, nullptr); }

ValidationReport validate_data(const std::filesystem::path& path) {
    auto in = open_input(path);
    return validate_data(in);
}

Dataset load_dataset(std::istream& in) {
    std::vector<ScannedRow> rows;
    const auto report = scan(in, &rows);
    if (!report.violations.empty()) {
        const auto& v = report.violations.front();
        throw Error(v.code, "line " + std::to_string(v.line) + ": " + v.message, v.line);
    }

    std::map<std::pair<int, Metric>, std::vector<Measurement>> grouped;
    for (const auto& row : rows) grouped[{day_of(row.m.timestamp), row.m.metric}].push_back(row.m);

    Dataset dataset;
    for (const auto& counts : report.days) {
        if (!counts.complete()) continue;
        const int day = counts.day_index;
        dataset.days.push_back(DayPair{
            Trace(Metric::Temperature, day, std::move(grouped[{day, Metric::Temperature}])),
            Trace(Metric::RelativeHumidity, day, std::move(grouped[{day, Metric::RelativeHumidity}])),
        });
    }
    if (dataset.days.empty()) throw Error(Errc::EmptyDataset, "no day has both temperature and relative_humidity rows");
    return dataset;
}

Dataset load_dataset(const std::filesystem::path& path) {
    auto in = open_input(path);
    return load_dataset(in);
}

void write_dataset(const Dataset& dataset, std::ostream& out) {
    out << kHeader << '\n';
    for (const auto& day : dataset.days) {
        for (const Trace* trace : {&day.temperature, &day.humidity}) {
            for (const auto& m : trace->measurements()) {
                out << format_number(m.timestamp) << ',' << m.node_id << ',' << to_string(m.metric) << ','
                    << format_number(m.value) << '\n';
            }
        }
    }
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::Io, "cannot write '" + path.string() + "'");
    write_dataset(dataset, out);
    if (!out) throw Error(Errc::Io, "write failed for '" + path.string() + "'");
}

void SynthesisParams::validate() const {
    auto fail = [](const std::string& what) { throw Error(Errc::InvalidParams, what); };
    if (humidity_nodes < 1 || temperature_nodes < 1) fail("need at least one node per network");
    if (!(cadence_s > 0.0) || std::fmod(kSecondsPerDay, cadence_s) != 0.0) fail("cadence must divide 86400 s");
    if (!(lag_s >= 0.0) || std::fmod(lag_s, cadence_s) != 0.0) fail("lag must be a non-negative multiple of cadence");
    if (!(coupling >= -1.0 && coupling <= 0.0)) fail("coupling outside [-1, 0]");
    for (double scale : {temp_day_spread, temp_diurnal_amplitude, temp_noise, ramp_magnitude, rh_noise, node_noise,
                         rh_per_degree}) {
        if (!(scale >= 0.0)) fail("negative noise or amplitude scale");
    }
    if (!(ramp_events_per_day >= 0.0) || !(ramp_duration_s > 0.0)) fail("bad ramp parameters");
    if (!(std::fabs(temp_ar_coeff) < 1.0) || !(std::fabs(rh_ar_coeff) < 1.0)) fail("AR coefficients must lie in (-1, 1)");
}

namespace {

struct Ramp {
    double start, rise, hold, magnitude;

    // trapezoid: linear rise, plateau, linear return
    double at(double t) const {
        const double u = t - start;
        if (u <= 0.0) return 0.0;
        if (u < rise) return magnitude * u / rise;
        if (u < rise + hold) return magnitude;
        if (u < 2.0 * rise + hold) return magnitude * (1.0 - (u - rise - hold) / rise);
        return 0.0;
    }
};

double clamp_metric(Metric metric, double v) {
    return metric == Metric::RelativeHumidity ? std::clamp(v, 0.0, 100.0) : std::clamp(v, -50.0, 100.0);
}

}  // namespace

Dataset synthesize_dataset(int days, std::uint64_t seed, const SynthesisParams& p) {
    if (days < 2) throw Error(Errc::InvalidParams, "need at least 2 days");
    p.validate();

    Rng rng(seed);
    const auto ticks = static_cast<std::size_t>(kSecondsPerDay / p.cadence_s);
    const auto lag = static_cast<std::size_t>(p.lag_s / p.cadence_s);
    const double ar_t_sd = p.temp_noise / std::sqrt(1.0 - p.temp_ar_coeff * p.temp_ar_coeff);
    const double ar_rh_sd = p.rh_noise / std::sqrt(1.0 - p.rh_ar_coeff * p.rh_ar_coeff);

    Dataset dataset;
    dataset.days.reserve(static_cast<std::size_t>(days));
    std::vector<double> temp(ticks + lag);
    std::vector<double> rh(ticks);

    for (int d = 0; d < days; ++d) {
        const double day_mean = p.temp_mean + p.temp_day_spread * rng.normal();

        const auto whole = static_cast<int>(p.ramp_events_per_day);
        const int n_ramps = whole + (rng.uniform() < p.ramp_events_per_day - whole ? 1 : 0);
        std::vector<Ramp> ramps;
        for (int r = 0; r < n_ramps; ++r) {
            const double start = rng.uniform() * kSecondsPerDay;
            const double rise = p.ramp_duration_s * (0.5 + rng.uniform());
            const double hold = p.ramp_duration_s * rng.uniform();
            const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
            ramps.push_back({start, rise, hold, sign * p.ramp_magnitude * (0.5 + rng.uniform())});
        }

        // environment temperature, starting `lag` ticks before midnight
        double ar = ar_t_sd * rng.normal();
        for (std::size_t j = 0; j < temp.size(); ++j) {
            const double t = (static_cast<double>(j) - static_cast<double>(lag)) * p.cadence_s;
            ar = p.temp_ar_coeff * ar + p.temp_noise * rng.normal();
            double v = day_mean + p.temp_diurnal_amplitude * std::sin(2.0 * std::numbers::pi * (t / kSecondsPerDay - 0.375));
            for (const auto& ramp : ramps) v += ramp.at(t);
            temp[j] = v + ar;
        }

        // humidity answers the temperature of `lag` seconds ago
        double rh_ar = ar_rh_sd * rng.normal();
        for (std::size_t j = 0; j < ticks; ++j) {
            rh_ar = p.rh_ar_coeff * rh_ar + p.rh_noise * rng.normal();
            rh[j] = p.rh_mean + p.coupling * p.rh_per_degree * (temp[j] - day_mean) + rh_ar;
        }

        const double origin = d * kSecondsPerDay;
        std::vector<Measurement> t_rows;
        std::vector<Measurement> rh_rows;
        t_rows.reserve(ticks * static_cast<std::size_t>(p.temperature_nodes));
        rh_rows.reserve(ticks * static_cast<std::size_t>(p.humidity_nodes));
        for (std::size_t j = 0; j < ticks; ++j) {
            const double ts = origin + static_cast<double>(j) * p.cadence_s;
            for (int n = 0; n < p.temperature_nodes; ++n) {
                const double v = clamp_metric(Metric::Temperature, temp[j + lag] + p.node_noise * rng.normal());
                t_rows.push_back({ts, static_cast<NodeId>(n), Metric::Temperature, v});
            }
            for (int n = 0; n < p.humidity_nodes; ++n) {
                const double v = clamp_metric(Metric::RelativeHumidity, rh[j] + p.node_noise * rng.normal());
                rh_rows.push_back({ts, static_cast<NodeId>(p.temperature_nodes + n), Metric::RelativeHumidity, v});
            }
        }
        dataset.days.push_back(DayPair{Trace(Metric::Temperature, d, std::move(t_rows)),
                                       Trace(Metric::RelativeHumidity, d, std::move(rh_rows))});
    }
    return dataset;
}

}  // namespace wsnx
