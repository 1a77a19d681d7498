#include "boardsim/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>

#include "boardsim/netgen.hpp"

namespace boardsim {

std::string_view to_string(ScenarioId id)
{
    switch (id) {
    case ScenarioId::A: return "A";
    case ScenarioId::B: return "B";
    case ScenarioId::C: return "C";
    case ScenarioId::D: return "D";
    case ScenarioId::E: return "E";
    case ScenarioId::Aprime: return "Aprime";
    case ScenarioId::Bprime: return "Bprime";
    case ScenarioId::gamma_sweep: return "gamma_sweep";
    case ScenarioId::custom: return "custom";
    }
    return "custom";
}

std::optional<ScenarioId> parse_scenario_id(std::string_view text)
{
    static const std::pair<std::string_view, ScenarioId> names[] = {
        {"A", ScenarioId::A},           {"B", ScenarioId::B},
        {"C", ScenarioId::C},           {"D", ScenarioId::D},
        {"E", ScenarioId::E},           {"Aprime", ScenarioId::Aprime},
        {"A'", ScenarioId::Aprime},     {"Bprime", ScenarioId::Bprime},
        {"B'", ScenarioId::Bprime},     {"gamma_sweep", ScenarioId::gamma_sweep},
        {"custom", ScenarioId::custom},
    };
    for (const auto& [name, id] : names) {
        if (name == text) {
            return id;
        }
    }
    return std::nullopt;
}

const std::vector<ScenarioId>& single_presets()
{
    static const std::vector<ScenarioId> ids = {ScenarioId::A, ScenarioId::B, ScenarioId::C,
                                                ScenarioId::D, ScenarioId::E, ScenarioId::Aprime,
                                                ScenarioId::Bprime};
    return ids;
}

void validate(const ScenarioSpec& spec)
{
    auto fail = [](const std::string& key, const std::string& what) {
        throw std::invalid_argument(key + " " + what);
    };
    if (spec.network.edges_per_firm == 0) {
        fail("network_m", "must be >= 1");
    }
    if (spec.network.firms <= spec.network.edges_per_firm) {
        fail("firms", "must exceed network_m");
    }
    if (!(spec.network.size_mean > 0.0)) {
        fail("size_mean", "must be > 0");
    }
    if (!(spec.network.size_variance > 0.0)) {
        fail("size_variance", "must be > 0");
    }
    if (spec.network.min_board_size == 0) {
        fail("min_board_size", "must be >= 1");
    }
    if (!(spec.init.gamma >= 0.0 && spec.init.gamma < 1.0)) {
        fail("gamma", "must lie in [0, 1)");
    }
    if (!(spec.init.initial_share >= 0.0 && spec.init.initial_share <= 1.0)) {
        fail("initial_share", "must lie in [0, 1]");
    }
    if (spec.init.initial_share > spec.dynamics.target_share) {
        fail("initial_share", "must not exceed target_share");
    }
    if (spec.runs == 0) {
        fail("runs", "must be >= 1");
    }
    validate(spec.dynamics);
}

ScenarioSpec preset(ScenarioId id)
{
    ScenarioSpec s;
    s.id = id;
    s.name = std::string(to_string(id));
    auto biased = [&] {
        s.init.mode = InitMode::biased;
        s.init.gamma = 0.8;
    };
    auto unbiased = [&] {
        s.init.mode = InitMode::unbiased;
        s.init.gamma = 0.0;
    };
    switch (id) {
    case ScenarioId::A:
        unbiased();
        break;
    case ScenarioId::B:
        biased();
        break;
    case ScenarioId::C:
        unbiased();
        s.dynamics.lambda_mode = LambdaMode::fixed;
        break;
    case ScenarioId::D:
        unbiased();
        s.dynamics.target_share = 1.0 / 6.0;
        break;
    case ScenarioId::E:
        unbiased();
        s.dynamics.lambda_mode = LambdaMode::fixed;
        s.dynamics.target_share = 1.0 / 6.0;
        break;
    case ScenarioId::Aprime:
        unbiased();
        s.dynamics.growth_mode = GrowthMode::endogenous;
        break;
    case ScenarioId::Bprime:
        biased();
        s.dynamics.growth_mode = GrowthMode::endogenous;
        break;
    case ScenarioId::gamma_sweep:
        throw std::invalid_argument("gamma_sweep expands to several scenarios; use gamma_sweep_specs");
    case ScenarioId::custom:
        unbiased();
        break;
    }
    return s;
}

ScenarioSpec preset(std::string_view id)
{
    const auto parsed = parse_scenario_id(id);
    if (!parsed) {
        throw std::invalid_argument("unknown scenario '" + std::string(id) + "'");
    }
    return preset(*parsed);
}

std::vector<ScenarioSpec> gamma_sweep_specs(const ScenarioSpec& base, double gamma_lo,
                                            double gamma_hi, std::size_t steps)
{
    if (steps < 2) {
        throw std::invalid_argument("gamma sweep needs at least 2 steps");
    }
    if (!(gamma_lo >= 0.0 && gamma_hi < 1.0 && gamma_lo <= gamma_hi)) {
        throw std::invalid_argument("gamma range must satisfy 0 <= lo <= hi < 1");
    }
    std::vector<ScenarioSpec> out;
    out.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        ScenarioSpec s = base;
        s.id = ScenarioId::gamma_sweep;
        s.init.mode = InitMode::biased;
        s.init.gamma = gamma_lo + (gamma_hi - gamma_lo) * static_cast<double>(i) /
                                      static_cast<double>(steps - 1);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "gamma_%.4f", s.init.gamma);
        s.name = buf;
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<ScenarioSpec> gamma_sweep_specs()
{
    return gamma_sweep_specs(preset(ScenarioId::B));
}

RunTrace run_one(const ScenarioSpec& spec, std::size_t run_index)
{
    validate(spec);
    Rng net_rng = make_rng(spec.master_seed, run_index, Stream::network);
    Rng size_rng = make_rng(spec.master_seed, run_index, Stream::board_sizes);
    Rng init_rng = make_rng(spec.master_seed, run_index, Stream::initial_seats);
    Rng dyn_rng = make_rng(spec.master_seed, run_index, Stream::dynamics);

    const NetworkConfig& net = spec.network;
    const FirmGraph graph = gen_ba(net.firms, net.edges_per_firm, net_rng);
    const auto raw_sizes =
        sample_board_sizes(net.firms, net.size_mean, net.size_variance, net.min_board_size, size_rng);
    const auto sizes = couple_sizes_to_degrees(graph, raw_sizes);
    BoardState state = initialize_boards(sizes, graph, spec.init, init_rng);
    const CentralityScores centrality = eigencentrality(graph);

    RunTrace trace;
    trace.total_seats = state.total_seats();
    trace.records.reserve(spec.years() + 1);

    InflowState inflow{spec.init.initial_share};
    trace.records.push_back(measure_year(0, state, graph, centrality.score, inflow.x,
                                         lambda_schedule(state.female_share(), spec.dynamics),
                                         spec.dynamics.beta));
    for (std::size_t year = 1; year <= spec.years(); ++year) {
        const StepReport report = step(state, graph, inflow, spec.dynamics, dyn_rng);
        trace.records.push_back(measure_year(year, state, graph, centrality.score, report.x_next,
                                             report.lambda, spec.dynamics.beta));
    }
    return trace;
}

const std::vector<FieldInfo>& record_fields()
{
    static const std::vector<FieldInfo> fields = [] {
        std::vector<FieldInfo> f = {
            {"inflow_x", false},     {"share_F", false},       {"lambda", false},
            {"net_homophily", false}, {"perc_F_by_F", true},   {"perc_F_by_M", true},
            {"perc_F_by_all", true}, {"delta_s", true},        {"fstar", false},
            {"fstar_cv", false},
        };
        for (std::size_t b = 1; b <= kRepresentationBins; ++b) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "rep_bin_%02zu", b);
            f.push_back({buf, false});
        }
        return f;
    }();
    return fields;
}

std::vector<std::optional<double>> flatten(const YearRecord& r)
{
    std::vector<std::optional<double>> out = {
        r.inflow_x,     r.share_f,      r.lambda,  r.net_homophily, r.perc_f_by_f,
        r.perc_f_by_m,  r.perc_f_by_all, r.delta_s, r.fstar_mean,    r.fstar_cv,
    };
    out.insert(out.end(), r.rep_bins.begin(), r.rep_bins.end());
    return out;
}

std::optional<std::size_t> field_index(std::string_view name)
{
    const auto& fields = record_fields();
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

const FieldSummary& RunAggregate::at(std::size_t year, std::string_view field) const
{
    const auto idx = field_index(field);
    if (!idx) {
        throw std::invalid_argument("unknown field '" + std::string(field) + "'");
    }
    return years.at(year).at(*idx);
}

namespace {

// Welford accumulator; values are fed in run-index order.
struct Accumulator {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double v)
    {
        ++count;
        const double d = v - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (v - mean);
    }

    FieldSummary summary() const
    {
        FieldSummary s;
        s.count = count;
        s.mean = count > 0 ? mean : std::nan("");
        s.std = count > 1 ? std::sqrt(std::max(0.0, m2 / static_cast<double>(count - 1)))
                          : (count == 1 ? 0.0 : std::nan(""));
        return s;
    }
};

template <typename Sink>
void for_each_block(const ScenarioSpec& spec, const MonteCarloOptions& options, Sink&& sink)
{
    validate(spec);
    if (options.threads > 0) {
        kernels::set_threads(options.threads);
    }
    const std::size_t block = std::max<std::size_t>(1, options.block);
    std::vector<RunTrace> traces;
    std::vector<std::string> errors;
    for (std::size_t first = 0; first < spec.runs; first += block) {
        const std::size_t count = std::min(block, spec.runs - first);
        traces.assign(count, RunTrace{});
        errors.assign(count, std::string{});
        const auto n = static_cast<std::ptrdiff_t>(count);
        const bool parallel = options.exec == Execution::parallel;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const auto k = static_cast<std::size_t>(i);
            try {
                if (options.on_run_start) {
                    options.on_run_start(first + k);
                }
                traces[k] = run_one(spec, options.fixed_run_index.value_or(first + k));
            } catch (const std::exception& e) {
                errors[k] = e.what();
            } catch (...) {
                errors[k] = "unknown error";
            }
        }
        for (std::size_t k = 0; k < count; ++k) {
            if (!errors[k].empty()) {
                throw RunFailure(first + k, errors[k]);
            }
        }
        for (std::size_t k = 0; k < count; ++k) {
            sink(std::move(traces[k]));
        }
    }
}

} // namespace

RunAggregate run_monte_carlo(const ScenarioSpec& spec, const MonteCarloOptions& options)
{
    const std::size_t n_years = spec.years() + 1;
    const std::size_t n_fields = record_fields().size();
    std::vector<std::vector<Accumulator>> acc(n_years, std::vector<Accumulator>(n_fields));

    RunAggregate out;
    out.spec = spec;
    for_each_block(spec, options, [&](RunTrace&& trace) {
        for (std::size_t y = 0; y < n_years; ++y) {
            const auto values = flatten(trace.records[y]);
            for (std::size_t f = 0; f < n_fields; ++f) {
                if (values[f]) {
                    acc[y][f].add(*values[f]);
                }
            }
        }
        ++out.runs;
    });

    out.years.resize(n_years);
    for (std::size_t y = 0; y < n_years; ++y) {
        out.years[y].reserve(n_fields);
        for (const auto& a : acc[y]) {
            out.years[y].push_back(a.summary());
        }
    }
    return out;
}

std::vector<RunTrace> run_all(const ScenarioSpec& spec, const MonteCarloOptions& options)
{
    std::vector<RunTrace> out;
    out.reserve(spec.runs);
    for_each_block(spec, options, [&](RunTrace&& trace) { out.push_back(std::move(trace)); });
    return out;
}

} // namespace boardsim
