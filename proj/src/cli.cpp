#include "wsnx/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "wsnx/numfmt.hpp"
#include "wsnx/plot.hpp"
#include "wsnx/report.hpp"

namespace wsnx {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(Errc::Io, "cannot write '" + path.string() + "'");
    body(file);
    if (!file) throw Error(Errc::Io, "write failed for '" + path.string() + "'");
}

Dataset dataset_for(const ExperimentConfig& config) {
    if (config.data) return load_dataset(*config.data);
    SynthesisParams params;
    params.coupling = config.coupling;
    return synthesize_dataset(config.synthesize_days, config.seed, params);
}

SimulationSettings settings_for(const ExperimentConfig& config) {
    SimulationSettings settings;
    settings.energy = config.energy;
    return settings;
}

std::vector<DayContext> contexts_for(const Dataset& dataset, const SimulationSettings& settings) {
    std::vector<DayContext> days;
    days.reserve(dataset.size());
    for (const auto& pair : dataset.days) days.emplace_back(pair, settings);
    return days;
}

CalibrationOptions calibration_for(const ExperimentConfig& config, int theta) {
    CalibrationOptions options;
    options.theta_percentile = theta;
    options.approach = config.approach;
    options.grid.step = config.grid_step;
    options.alpha = config.alpha;
    options.simulation = settings_for(config);
    return options;
}

std::string day_tag(int day_index) {
    std::string s = std::to_string(day_index);
    return "day" + std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

void print_summary(std::span<const SummaryRow> rows, std::ostream& out) {
    for (const auto& r : rows) {
        out << "theta_" << r.theta_percentile << ' ' << to_string(r.row) << ": p="
            << (r.p ? format_number(*r.p) : std::string("undefined")) << " e_ps=" << format_number(r.e_ps)
            << " p_high=" << (r.p_high ? format_number(*r.p_high) : std::string("undefined"))
            << " energy_vs_max=" << format_number(r.energy_vs_max) << '\n';
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!data && synthesize_days < 2) throw Error(Errc::InvalidParams, "--synthesize needs at least 2 days");
    if (!(coupling >= -1.0 && coupling <= 0.0)) throw Error(Errc::InvalidParams, "--coupling must lie in [-1, 0]");
    if (theta && (*theta < 0 || *theta > 100)) throw Error(Errc::InvalidParams, "--theta must lie in [0, 100]");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(Errc::InvalidParams, "--alpha must lie in [0, 1]");
    if (grid_step < 1 || grid_step > 90) throw Error(Errc::InvalidParams, "--grid-step must lie in [1, 90]");
    if (splits < 1) throw Error(Errc::InvalidParams, "--splits must be at least 1");
    energy.validate();
    if (out_dir.empty()) throw Error(Errc::InvalidParams, "output directory is empty");
}

int cmd_synthesize(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    const auto dataset = dataset_for(config);
    const auto path = config.out_dir / "dataset.csv";
    write_file(path, [&](std::ostream& f) { write_dataset(dataset, f); });
    out << "wrote " << dataset.size() << " day-pairs to " << path.string() << '\n';
    return 0;
}

int cmd_validate_data(const fs::path& path, std::ostream& out) {
    const auto report = validate_data(path);
    out << report.rows << " rows, " << report.complete_days() << " day-pairs\n";
    for (const auto& d : report.days) {
        out << "day " << d.day_index << ": temperature " << d.temperature_rows << ", relative_humidity "
            << d.humidity_rows << (d.complete() ? "" : " (incomplete)") << '\n';
    }
    for (const auto& v : report.violations) {
        out << "line " << v.line << ": " << to_string(v.code) << ": " << v.message << '\n';
    }
    out << report.violations.size() << " violations\n";
    return 0;
}

int cmd_calibrate(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    const auto settings = settings_for(config);
    const auto days = contexts_for(dataset_for(config), settings);
    const auto result = calibrate(std::span<const DayContext>(days), calibration_for(config, config.theta.value_or(60)));

    write_file(config.out_dir / "grid.csv", [&](std::ostream& f) { write_grid_csv(result.grid, f); });
    write_file(config.out_dir / "plots" / "grid.svg", [&](std::ostream& f) { plot_grid_heatmap(result.grid, f); });
    out << "theta_" << result.theta.percentile << " = " << format_number(result.theta.value) << '\n'
        << "best sigma_rh_" << result.best.sigma_rh_percentile.value_or(-1) << " sigma_t_"
        << result.best.sigma_t_percentile.value_or(-1) << ": p="
        << (result.best.scores.p ? format_number(*result.best.scores.p) : std::string("undefined")) << '\n';
    return 0;
}

int cmd_cross_validate(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    const auto settings = settings_for(config);
    const auto days = contexts_for(dataset_for(config), settings);
    const std::vector<int> thetas = config.theta ? std::vector<int>{*config.theta} : std::vector<int>{70, 60, 50};

    std::vector<SummaryRow> summary;
    std::vector<SplitResult> splits;
    for (int theta : thetas) {
        CrossValidationOptions options{config.splits, config.seed, calibration_for(config, theta)};
        auto result = cross_validate(days, options);
        summary.insert(summary.end(), result.summary.begin(), result.summary.end());
        for (auto& s : result.splits) splits.push_back(std::move(s));
    }
    write_file(config.out_dir / "summary.csv", [&](std::ostream& f) { write_summary_csv(summary, f); });
    write_file(config.out_dir / "splits.csv", [&](std::ostream& f) { write_splits_csv(splits, f); });
    write_file(config.out_dir / "plots" / "scores.svg", [&](std::ostream& f) { plot_score_bars(summary, f); });
    print_summary(summary, out);
    return 0;
}

int cmd_run(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    const auto settings = settings_for(config);
    const auto days = contexts_for(dataset_for(config), settings);
    CrossValidationOptions options{config.splits, config.seed, calibration_for(config, config.theta.value_or(60))};
    const auto result = cross_validate(days, options);

    write_file(config.out_dir / "summary.csv", [&](std::ostream& f) { write_summary_csv(result.summary, f); });
    write_file(config.out_dir / "splits.csv", [&](std::ostream& f) { write_splits_csv(result.splits, f); });

    // split 0 in detail: its combined grid, per-day logs and day plots
    const auto& first = result.splits.front();
    write_file(config.out_dir / "grid.csv", [&](std::ostream& f) { write_grid_csv(first.combined_grid, f); });
    for (std::size_t pos : first.validation) {
        const auto& day = days[pos];
        const std::string tag = day_tag(day.day_index());
        for (const auto& outcome : first.outcomes) {
            const auto run = run_day(day, outcome.config, first.theta, settings);
            write_file(config.out_dir / "reports" / (tag + "_" + std::string(to_string(outcome.row)) + ".csv"),
                       [&](std::ostream& f) { write_run_report(run.records, f); });
        }
        write_file(config.out_dir / "plots" / (tag + ".svg"),
                   [&](std::ostream& f) { plot_trace_day(day, first.theta, f); });
    }
    write_file(config.out_dir / "plots" / "grid.svg",
               [&](std::ostream& f) { plot_grid_heatmap(first.combined_grid, f); });
    write_file(config.out_dir / "plots" / "scores.svg",
               [&](std::ostream& f) { plot_score_bars(result.summary, f); });
    print_summary(result.summary, out);
    return 0;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    ExperimentConfig config;
    if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') config.out_dir = env;

    CLI::App app{"Adaptive sensing experiments on paired temperature/humidity traces", "wsnx"};
    app.require_subcommand(1, 1);
    app.set_config("--config", "", "flat key=value file; command-line flags win");

    std::string data;
    std::string approach = "node-sets";
    int theta = -1;
    std::string out_dir;
    app.add_option("--data", data, "trace CSV (timestamp_s,node_id,metric,value)");
    app.add_option("--synthesize", config.synthesize_days, "synthesize this many days when --data is absent");
    app.add_option("--coupling", config.coupling, "temperature to humidity coupling of synthesized data");
    app.add_option("--seed", config.seed, "seed for synthesis and splits");
    app.add_option("--approach", approach, "node-sets or intervals")->check(CLI::IsMember({"node-sets", "intervals"}));
    app.add_option("--theta", theta, "HighDelta percentile");
    app.add_option("--alpha", config.alpha, "energy weight of p");
    app.add_option("--grid-step", config.grid_step, "percentile step of the symptom grid");
    app.add_option("--splits", config.splits, "random sub-sampling splits");
    app.add_option("--e-measure", config.energy.e_measure, "J per measurement");
    app.add_option("--e-tx", config.energy.e_tx, "J per report");
    app.add_option("--e-idle", config.energy.e_idle, "J per node-second");
    app.add_option("--e-update", config.energy.e_update, "J per plan dissemination");
    app.add_option("--out", out_dir, std::string("output directory (default: $") + kOutDirEnv + " or wsnx_out)");

    auto* run = app.add_subcommand("run", "cross-validate at one theta and write all artifacts")->fallthrough();
    auto* cal = app.add_subcommand("calibrate", "grid-search symptom thresholds on all days")->fallthrough();
    auto* cv = app.add_subcommand("cross-validate", "summary over several thetas")->fallthrough();
    auto* syn = app.add_subcommand("synthesize", "write a synthetic dataset CSV")->fallthrough();
    auto* val = app.add_subcommand("validate-data", "report row counts and violations of --data")->fallthrough();

    std::vector<std::string> argv(args.rbegin(), args.rend());  // CLI11 consumes a reversed vector
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (!data.empty()) config.data = data;
        config.approach = *parse_approach(approach);
        if (app.count("--theta") > 0) config.theta = theta;
        if (!out_dir.empty()) config.out_dir = out_dir;

        if (run->parsed()) return cmd_run(config, out);
        if (cal->parsed()) return cmd_calibrate(config, out);
        if (cv->parsed()) return cmd_cross_validate(config, out);
        if (syn->parsed()) return cmd_synthesize(config, out);
        if (val->parsed()) {
            if (!config.data) throw Error(Errc::InvalidParams, "validate-data needs --data");
            return cmd_validate_data(*config.data, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace wsnx
