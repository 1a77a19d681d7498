#include "boardsim/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "boardsim/io.hpp"
#include "boardsim/kernels.hpp"
#include "boardsim/plot.hpp"

namespace boardsim::cli {

namespace {

int resolve_threads(int requested)
{
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("BOARDSIM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) {
            return n;
        }
    }
    return kernels::max_threads();
}

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    return out;
}

void add_scale_options(CLI::App& cmd, RunOptions& opts)
{
    cmd.add_option("--firms", opts.firms, "Number of firms per network");
    cmd.add_option("--runs", opts.runs, "Monte Carlo runs (default 100; 10000 for full scale)");
    cmd.add_option("--years", opts.years, "Simulated years after year 0");
    cmd.add_option("--seed", opts.seed, "Master seed");
    cmd.add_option("--set", opts.settings, "Override a config key: key=value (repeatable)");
    cmd.add_option("--threads", opts.threads,
                   "Worker threads (default: $BOARDSIM_THREADS or the OpenMP default)");
    cmd.add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
}

// True when a non-comment line of the config file assigns `key`.
bool config_sets_key(const std::filesystem::path& path, std::string_view key)
{
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        line = line.substr(0, line.find('#'));
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            continue;
        }
        auto name = line.substr(0, eq);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        if (name == key) {
            return true;
        }
    }
    return false;
}

} // namespace

ScenarioSpec resolve_scenario(const std::string& scenario_or_path, const RunOptions& options)
{
    ScenarioSpec spec;
    if (const auto id = parse_scenario_id(scenario_or_path)) {
        if (*id == ScenarioId::gamma_sweep) {
            throw ConfigError("scenario", "gamma_sweep is run with the `sweep` command");
        }
        spec = preset(*id);
        spec.runs = kDefaultRuns;
    } else if (std::filesystem::is_regular_file(scenario_or_path)) {
        spec = load_config(scenario_or_path);
        if (!config_sets_key(scenario_or_path, "runs")) {
            spec.runs = kDefaultRuns;
        }
    } else {
        throw ConfigError("scenario", "unknown scenario or missing config file '" +
                                          scenario_or_path + "'");
    }
    for (const auto& kv : options.settings) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(kv, "override must look like key=value");
        }
        apply_setting(spec, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (options.firms) {
        spec.network.firms = *options.firms;
    }
    if (options.runs) {
        spec.runs = *options.runs;
    }
    if (options.years) {
        spec.dynamics.horizon_years = *options.years;
    }
    if (options.seed) {
        spec.master_seed = *options.seed;
    }
    try {
        validate(spec);
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        throw ConfigError(what.substr(0, what.find(' ')), what);
    }
    return spec;
}

RunOutput cmd_run(const std::string& scenario_or_path, const RunOptions& options)
{
    const ScenarioSpec spec = resolve_scenario(scenario_or_path, options);
    const int threads = resolve_threads(options.threads);
    std::filesystem::create_directories(options.out_dir);

    const auto start = std::chrono::steady_clock::now();
    MonteCarloOptions mc;
    mc.threads = threads;
    RunOutput out;
    out.aggregate = run_monte_carlo(spec, mc);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    out.csv = options.out_dir / (spec.name + ".csv");
    {
        auto f = open_output(out.csv);
        write_aggregate_csv(f, out.aggregate);
    }
    out.manifest = options.out_dir / "manifest.json";
    {
        auto f = open_output(out.manifest);
        write_manifest(f, {spec}, {wall, threads, {out.csv.filename().string()}});
    }
    return out;
}

void write_sweep_summary(std::ostream& out, const std::vector<RunAggregate>& aggregates)
{
    static const char* const fields[] = {"rep_bin_01", "perc_F_by_F", "perc_F_by_M",
                                         "perc_F_by_all", "share_F", "net_homophily"};
    out << "gamma,year";
    for (const char* f : fields) {
        out << ',' << f << "_mean," << f << "_std";
    }
    out << '\n';
    for (const auto& agg : aggregates) {
        for (std::size_t y = 0; y < agg.years.size(); ++y) {
            out << format_number(agg.spec.init.gamma) << ',' << y;
            for (const char* f : fields) {
                const auto& s = agg.at(y, f);
                out << ',' << format_number(s.mean) << ',' << format_number(s.std);
            }
            out << '\n';
        }
    }
}

SweepOutput cmd_sweep(const SweepOptions& sweep, const RunOptions& options)
{
    if (sweep.steps < 2) {
        throw ConfigError("steps", "a sweep needs at least 2 steps");
    }
    const ScenarioSpec base = resolve_scenario(sweep.base, options);
    std::vector<ScenarioSpec> specs;
    try {
        specs = gamma_sweep_specs(base, sweep.gamma_min, sweep.gamma_max, sweep.steps);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("gamma", e.what());
    }
    const int threads = resolve_threads(options.threads);
    std::filesystem::create_directories(options.out_dir);

    const auto start = std::chrono::steady_clock::now();
    MonteCarloOptions mc;
    mc.threads = threads;
    SweepOutput out;
    std::vector<RunAggregate> aggregates;
    std::vector<std::string> names;
    for (const auto& spec : specs) {
        aggregates.push_back(run_monte_carlo(spec, mc));
        out.csvs.push_back(options.out_dir / (spec.name + ".csv"));
        auto f = open_output(out.csvs.back());
        write_aggregate_csv(f, aggregates.back());
        names.push_back(out.csvs.back().filename().string());
    }
    out.summary = options.out_dir / "sweep_summary.csv";
    {
        auto f = open_output(out.summary);
        write_sweep_summary(f, aggregates);
    }
    names.push_back(out.summary.filename().string());
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.manifest = options.out_dir / "manifest.json";
    {
        auto f = open_output(out.manifest);
        write_manifest(f, specs, {wall, threads, names});
    }
    return out;
}

void print_presets(std::ostream& out)
{
    out << std::left << std::setw(8) << "id" << std::setw(10) << "init" << std::setw(7) << "gamma"
        << std::setw(16) << "lambda" << std::setw(9) << "target" << "growth\n";
    auto row = [&](const ScenarioSpec& s) {
        out << std::left << std::setw(8) << s.name << std::setw(10)
            << (s.init.mode == InitMode::biased ? "biased" : "unbiased") << std::setw(7)
            << format_number(s.init.gamma) << std::setw(16)
            << (s.dynamics.lambda_mode == LambdaMode::fixed ? "fixed" : "size_dependent")
            << std::setw(9) << format_number(std::round(s.dynamics.target_share * 1e4) / 1e4)
            << (s.dynamics.growth_mode == GrowthMode::endogenous ? "endogenous" : "exogenous") << '\n';
    };
    for (ScenarioId id : single_presets()) {
        row(preset(id));
    }
    const auto sweep = gamma_sweep_specs();
    out << "gamma_sweep: scenario B with gamma in {";
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        out << (i ? ", " : "") << format_number(sweep[i].init.gamma);
    }
    out << "} (" << sweep.size() << " runs of the sweep)\n";
}

int main(int argc, char** argv)
{
    CLI::App app{"Diversity dynamics on corporate-board networks"};
    app.require_subcommand(1);

    RunOptions run_opts;
    std::string scenario;
    auto* run_cmd = app.add_subcommand("run", "Run one scenario preset or config file");
    run_cmd->add_option("scenario", scenario, "Preset id (A, B, C, D, E, Aprime, Bprime) or config path")
        ->required();
    add_scale_options(*run_cmd, run_opts);

    RunOptions sweep_run_opts;
    SweepOptions sweep_opts;
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep the initial-assignment bias gamma");
    sweep_cmd->add_option("--base", sweep_opts.base, "Base scenario")->capture_default_str();
    sweep_cmd->add_option("--gamma-min", sweep_opts.gamma_min)->capture_default_str();
    sweep_cmd->add_option("--gamma-max", sweep_opts.gamma_max)->capture_default_str();
    sweep_cmd->add_option("--steps", sweep_opts.steps)->capture_default_str();
    add_scale_options(*sweep_cmd, sweep_run_opts);

    std::vector<std::string> csvs;
    std::vector<std::string> fields;
    std::string plot_out = "plot.svg";
    auto* plot_cmd = app.add_subcommand("plot", "Chart fields of aggregate CSVs as SVG");
    plot_cmd->add_option("csv", csvs, "Aggregate CSV files")->required();
    plot_cmd->add_option("--fields", fields, "Fields to plot (comma separated)")->delimiter(',');
    plot_cmd->add_option("--out", plot_out, "Output SVG path")->capture_default_str();

    app.add_subcommand("presets", "List the scenario presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ExitCode::ok : ExitCode::config_error;
    }

    try {
        if (run_cmd->parsed()) {
            const auto out = cmd_run(scenario, run_opts);
            std::cout << "wrote " << out.csv.string() << " and " << out.manifest.string() << '\n';
        } else if (sweep_cmd->parsed()) {
            const auto out = cmd_sweep(sweep_opts, sweep_run_opts);
            std::cout << "wrote " << out.csvs.size() << " scenario CSVs, " << out.summary.string()
                      << " and " << out.manifest.string() << '\n';
        } else if (plot_cmd->parsed()) {
            std::vector<std::filesystem::path> paths(csvs.begin(), csvs.end());
            const auto result = plot_csvs(paths, fields, plot_out);
            for (const auto& f : result.files) {
                std::cout << "wrote " << f.string() << '\n';
            }
        } else {
            print_presets(std::cout);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ExitCode::config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ExitCode::runtime_error;
    }
    return ExitCode::ok;
}

} // namespace boardsim::cli
