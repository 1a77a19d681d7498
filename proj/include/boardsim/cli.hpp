#ifndef BOARDSIM_CLI_HPP
#define BOARDSIM_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "boardsim/scenarios.hpp"

namespace boardsim::cli {

enum ExitCode : int { ok = 0, config_error = 1, runtime_error = 2 };

// Scale and override options shared by `run` and `sweep`.
struct RunOptions {
    std::optional<std::size_t> firms;
    std::optional<std::size_t> runs;
    std::optional<std::size_t> years;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> settings; // key=value
    int threads = 0;
    std::filesystem::path out_dir = "out";
};

inline constexpr std::size_t kDefaultRuns = 100;

/// Resolves a preset id or config path and applies overrides; throws ConfigError.
ScenarioSpec resolve_scenario(const std::string& scenario_or_path, const RunOptions& options);

struct RunOutput {
    std::filesystem::path csv;
    std::filesystem::path manifest;
    RunAggregate aggregate;
};

RunOutput cmd_run(const std::string& scenario_or_path, const RunOptions& options);

struct SweepOptions {
    std::string base = "B";
    double gamma_min = 0.0;
    double gamma_max = 0.6;
    std::size_t steps = 13;
};

struct SweepOutput {
    std::vector<std::filesystem::path> csvs;
    std::filesystem::path summary;
    std::filesystem::path manifest;
};

SweepOutput cmd_sweep(const SweepOptions& sweep, const RunOptions& options);

/// Long-format sweep summary: one row per (gamma, year).
void write_sweep_summary(std::ostream& out, const std::vector<RunAggregate>& aggregates);

void print_presets(std::ostream& out);

/// Full command-line entry point; returns the process exit code.
int main(int argc, char** argv);

} // namespace boardsim::cli

#endif // BOARDSIM_CLI_HPP
