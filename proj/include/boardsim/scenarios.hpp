#ifndef BOARDSIM_SCENARIOS_HPP
#define BOARDSIM_SCENARIOS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "boardsim/boards.hpp"
#include "boardsim/dynamics.hpp"
#include "boardsim/metrics.hpp"

namespace boardsim {

enum class ScenarioId { A, B, C, D, E, Aprime, Bprime, gamma_sweep, custom };

std::string_view to_string(ScenarioId id);
/// Accepts A..E, Aprime/A', Bprime/B', gamma_sweep, custom (case-sensitive).
std::optional<ScenarioId> parse_scenario_id(std::string_view text);
const std::vector<ScenarioId>& single_presets();

struct NetworkConfig {
    std::size_t firms = 1000;
    std::size_t edges_per_firm = 3;
    double size_mean = 12.5;
    double size_variance = 20.6;
    std::size_t min_board_size = 3;
};

struct ScenarioSpec {
    ScenarioId id = ScenarioId::custom;
    std::string name = "custom";
    NetworkConfig network;
    InitConfig init;
    DynamicsConfig dynamics;
    std::size_t runs = 10000;
    std::uint64_t master_seed = 1;

    std::size_t years() const noexcept { return dynamics.horizon_years; }
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ScenarioSpec& spec);

/// Preset for a single scenario. gamma_sweep and custom are rejected here;
/// use gamma_sweep_specs for the sweep.
ScenarioSpec preset(ScenarioId id);
ScenarioSpec preset(std::string_view id);

/// `steps` copies of `base` with gamma evenly spaced over [gamma_lo, gamma_hi].
std::vector<ScenarioSpec> gamma_sweep_specs(const ScenarioSpec& base, double gamma_lo = 0.0,
                                            double gamma_hi = 0.6, std::size_t steps = 13);
std::vector<ScenarioSpec> gamma_sweep_specs();

/// Everything one replication produces: the network, its centrality and one
/// record per year including year 0.
struct RunTrace {
    std::vector<YearRecord> records;
    std::size_t total_seats = 0;
};

RunTrace run_one(const ScenarioSpec& spec, std::size_t run_index);

class RunFailure : public std::runtime_error {
public:
    RunFailure(std::size_t run_index, const std::string& what)
        : std::runtime_error("run " + std::to_string(run_index) + " failed: " + what),
          run_index_(run_index)
    {
    }
    std::size_t run_index() const noexcept { return run_index_; }

private:
    std::size_t run_index_;
};

// Flat, ordered view of the numeric YearRecord fields.
struct FieldInfo {
    std::string name;
    bool optional = false;
};
const std::vector<FieldInfo>& record_fields();
std::vector<std::optional<double>> flatten(const YearRecord& record);
std::optional<std::size_t> field_index(std::string_view name);

struct FieldSummary {
    double mean = 0.0;
    double std = 0.0;
    std::size_t count = 0; // runs contributing a value
};

struct RunAggregate {
    ScenarioSpec spec;
    std::size_t runs = 0;
    // [year][field] in record_fields() order
    std::vector<std::vector<FieldSummary>> years;

    const FieldSummary& at(std::size_t year, std::string_view field) const;
};

struct MonteCarloOptions {
    Execution exec = Execution::parallel;
    int threads = 0;          // 0 keeps the OpenMP default
    std::size_t block = 64;   // runs computed per parallel block
    // Called with each run index before the run starts (may run concurrently).
    // An exception thrown here fails that run.
    std::function<void(std::size_t)> on_run_start;
    // When set, every run uses this run index's random streams.
    std::optional<std::size_t> fixed_run_index;
};

/// Aggregates run_one over run indices [0, runs). Reductions happen serially in
/// run-index order, so the result does not depend on thread count. A failing
/// run raises RunFailure carrying its index.
RunAggregate run_monte_carlo(const ScenarioSpec& spec, const MonteCarloOptions& options = {});

/// Per-run hook variant used by tests needing individual traces.
std::vector<RunTrace> run_all(const ScenarioSpec& spec, const MonteCarloOptions& options = {});

} // namespace boardsim

#endif // BOARDSIM_SCENARIOS_HPP
