#pragma once
// Command-line front end. Every number it writes comes from the evaluation
// and simulator modules; this layer only wires inputs to outputs.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wsnx/evaluation.hpp"

namespace wsnx {

/// Name of the environment variable holding the default output directory.
inline constexpr const char* kOutDirEnv = "WSNX_OUT_DIR";

struct ExperimentConfig {
    std::optional<std::filesystem::path> data;  // CSV input; synthesized when absent
    int synthesize_days = 48;
    double coupling = -0.9;
    std::uint64_t seed = 7;
    Approach approach = Approach::NodeSets;
    std::optional<int> theta;  // percentile; commands pick their own default
    double alpha = 0.5;
    int grid_step = 10;
    int splits = 10;
    EnergyModel energy;
    std::filesystem::path out_dir = "wsnx_out";

    /// Checks every field against the downstream preconditions.
    /// Throws InvalidParams.
    void validate() const;
};

/// Entry point behind the `wsnx` executable. args excludes the program name.
/// Returns the process exit status; diagnostics go to `err` as single lines.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_run(const ExperimentConfig& config, std::ostream& out);
int cmd_calibrate(const ExperimentConfig& config, std::ostream& out);
int cmd_cross_validate(const ExperimentConfig& config, std::ostream& out);
int cmd_synthesize(const ExperimentConfig& config, std::ostream& out);
int cmd_validate_data(const std::filesystem::path& path, std::ostream& out);

}  // namespace wsnx
