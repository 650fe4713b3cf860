#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tradenet/types.hpp"

namespace tradenet {

inline constexpr std::string_view kToolName = "tradenet";
inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 42;

enum class OutputFormat { csv, json };

/// Fully resolved invocation. Every field that influences results is echoed
/// into each artifact, so outputs are reproducible from their own header.
/// `threads` only schedules work and is deliberately not part of the echo.
struct RunConfig {
    std::string command;
    std::string input;
    std::string groups;     // optional group-map path; empty = none
    std::vector<int> years;  // empty = all years present in the input
    std::vector<Mode> modes = {Mode::unweighted, Mode::weighted};
    Kind kind = Kind::node;
    std::size_t top = 10;
    std::vector<Strategy> strategies;  // empty = defaults for the kind
    std::vector<double> p_grid;        // empty = default grid
    std::size_t samples = 200;
    std::uint64_t seed = kDefaultSeed;
    OutputFormat format = OutputFormat::csv;
    std::string out_dir = ".";
    unsigned threads = 0;  // 0 = hardware concurrency
};

/// Default strategies shown in the robustness figures: four node strategies,
/// three edge strategies.
std::vector<Strategy> default_strategies(Kind kind);

/// Stable key=value sequence embedded into artifacts and printed at startup.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config);

struct CommandOutcome {
    std::vector<std::string> files;
    std::vector<std::string> warnings;
};

CommandOutcome cmd_efficiency(const RunConfig& config);
CommandOutcome cmd_criticality(const RunConfig& config, Kind kind);
CommandOutcome cmd_robustness(const RunConfig& config, Kind kind,
                              std::span<const Strategy> strategies);
CommandOutcome cmd_correlate(const RunConfig& config);
CommandOutcome cmd_volumes(const RunConfig& config);

/// Command-line entry point. Returns 0 on success, 1 on usage errors,
/// 2 on data or I/O errors.
int run_cli(int argc, const char* const* argv);

}  // namespace tradenet
