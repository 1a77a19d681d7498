#include "boardsim/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace boardsim {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text)
{
    const std::string copy(trim(text));
    if (copy.empty()) {
        throw ConfigError(std::string(key), "missing value");
    }
    char* end = nullptr;
    const double v = std::strtod(copy.c_str(), &end);
    if (end != copy.c_str() + copy.size() || !std::isfinite(v)) {
        throw ConfigError(std::string(key), "expected a number, got '" + copy + "'");
    }
    return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text)
{
    text = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError(std::string(key), "expected a non-negative integer, got '" +
                                                std::string(text) + "'");
    }
    return v;
}

template <typename Enum>
Enum parse_choice(std::string_view key, std::string_view text,
                  std::initializer_list<std::pair<std::string_view, Enum>> choices)
{
    text = trim(text);
    std::string allowed;
    for (const auto& [name, value] : choices) {
        if (name == text) {
            return value;
        }
        allowed += allowed.empty() ? "" : ", ";
        allowed += name;
    }
    throw ConfigError(std::string(key), "expected one of {" + allowed + "}, got '" +
                                            std::string(text) + "'");
}

const char* name_of(InitMode m) { return m == InitMode::biased ? "biased" : "unbiased"; }
const char* name_of(LambdaMode m) { return m == LambdaMode::fixed ? "fixed" : "size_dependent"; }
const char* name_of(GrowthMode m) { return m == GrowthMode::endogenous ? "endogenous" : "exogenous"; }
const char* name_of(GrowthForm m) { return m == GrowthForm::paper_literal ? "paper_literal" : "normalized"; }
const char* name_of(EndoApplication m) { return m == EndoApplication::literal ? "literal" : "increment"; }

// Shortest text that parses back to the same double.
std::string exact(double value)
{
    char buf[40];
    for (int digits = 9; digits <= 17; ++digits) {
        std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
        if (std::strtod(buf, nullptr) == value) {
            break;
        }
    }
    return buf;
}

} // namespace

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys = {
        "scenario",     "name",          "firms",          "network_m",    "size_mean",
        "size_variance", "min_board_size", "init_mode",     "gamma",        "initial_share",
        "retire_rate",  "g_f",           "target_share",   "lambda_mode",  "lambda_bar",
        "g_lambda",     "y_m",           "beta",           "growth_mode",  "growth_form",
        "endo_application", "years",     "runs",           "master_seed",
    };
    return keys;
}

void apply_setting(ScenarioSpec& spec, std::string_view key, std::string_view value)
{
    auto& net = spec.network;
    auto& dyn = spec.dynamics;
    const std::string k(trim(key));
    if (k == "scenario") {
        const auto id = parse_scenario_id(trim(value));
        if (!id || *id == ScenarioId::gamma_sweep) {
            throw ConfigError(k, "unknown scenario '" + std::string(trim(value)) + "'");
        }
        ScenarioSpec fresh = preset(*id);
        fresh.network = spec.network;
        fresh.runs = spec.runs;
        fresh.master_seed = spec.master_seed;
        fresh.dynamics.horizon_years = spec.dynamics.horizon_years;
        spec = fresh;
    } else if (k == "name") {
        spec.name = std::string(trim(value));
    } else if (k == "firms") {
        net.firms = parse_unsigned(k, value);
    } else if (k == "network_m") {
        net.edges_per_firm = parse_unsigned(k, value);
    } else if (k == "size_mean") {
        net.size_mean = parse_double(k, value);
    } else if (k == "size_variance") {
        net.size_variance = parse_double(k, value);
    } else if (k == "min_board_size") {
        net.min_board_size = parse_unsigned(k, value);
    } else if (k == "init_mode") {
        spec.init.mode = parse_choice<InitMode>(k, value, {{"unbiased", InitMode::unbiased},
                                                           {"biased", InitMode::biased}});
    } else if (k == "gamma") {
        spec.init.gamma = parse_double(k, value);
    } else if (k == "initial_share") {
        spec.init.initial_share = parse_double(k, value);
    } else if (k == "retire_rate") {
        dyn.retire_rate = parse_double(k, value);
    } else if (k == "g_f") {
        dyn.g_f = parse_double(k, value);
    } else if (k == "target_share") {
        dyn.target_share = parse_double(k, value);
    } else if (k == "lambda_mode") {
        dyn.lambda_mode = parse_choice<LambdaMode>(
            k, value, {{"size_dependent", LambdaMode::size_dependent}, {"fixed", LambdaMode::fixed}});
    } else if (k == "lambda_bar") {
        dyn.lambda_bar = parse_double(k, value);
    } else if (k == "g_lambda") {
        dyn.g_lambda = parse_double(k, value);
    } else if (k == "y_m") {
        dyn.y_m = parse_double(k, value);
    } else if (k == "beta") {
        dyn.beta = parse_double(k, value);
    } else if (k == "growth_mode") {
        dyn.growth_mode = parse_choice<GrowthMode>(
            k, value, {{"exogenous", GrowthMode::exogenous}, {"endogenous", GrowthMode::endogenous}});
    } else if (k == "growth_form") {
        dyn.growth_form = parse_choice<GrowthForm>(
            k, value, {{"normalized", GrowthForm::normalized}, {"paper_literal", GrowthForm::paper_literal}});
    } else if (k == "endo_application") {
        dyn.endo_application = parse_choice<EndoApplication>(
            k, value, {{"increment", EndoApplication::increment}, {"literal", EndoApplication::literal}});
    } else if (k == "years") {
        dyn.horizon_years = parse_unsigned(k, value);
    } else if (k == "runs") {
        spec.runs = parse_unsigned(k, value);
    } else if (k == "master_seed") {
        spec.master_seed = parse_unsigned(k, value);
    } else {
        throw ConfigError(k, "unknown setting");
    }
    // Network size, horizon, run count and seed do not change which model a preset describes.
    static const std::string_view scale_keys[] = {"scenario", "name",  "firms",
                                                  "years",    "runs",  "master_seed"};
    const bool scale_only = std::find(std::begin(scale_keys), std::end(scale_keys), k) !=
                            std::end(scale_keys);
    if (!scale_only && spec.id != ScenarioId::custom && spec.id != ScenarioId::gamma_sweep) {
        spec.id = ScenarioId::custom;
    }
}

ScenarioSpec parse_config(std::istream& in, const std::string& source)
{
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(view), source + ":" + std::to_string(line_no) +
                                                     ": expected `key = value`");
        }
        entries.emplace_back(std::string(trim(view.substr(0, eq))),
                             std::string(trim(view.substr(eq + 1))));
    }

    ScenarioSpec spec = preset(ScenarioId::A);
    spec.id = ScenarioId::custom;
    spec.name = "custom";
    std::string name;
    for (const auto& [key, value] : entries) {
        if (key == "scenario") {
            apply_setting(spec, key, value);
        }
    }
    // Keep the preset identity when the file only restates it.
    const ScenarioId base = spec.id;
    const std::string base_name = spec.name;
    for (const auto& [key, value] : entries) {
        if (key == "scenario") {
            continue;
        }
        if (key == "name") {
            name = value;
            continue;
        }
        apply_setting(spec, key, value);
    }
    if (spec.id == ScenarioId::custom && base != ScenarioId::custom) {
        spec.name = base_name + "_custom";
    }
    if (!name.empty()) {
        spec.name = name;
    }
    return spec;
}

ScenarioSpec load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config", "cannot open '" + path.string() + "'");
    }
    return parse_config(in, path.string());
}

std::string format_config(const ScenarioSpec& s)
{
    std::ostringstream out;
    out << "name = " << s.name << '\n'
        << "firms = " << s.network.firms << '\n'
        << "network_m = " << s.network.edges_per_firm << '\n'
        << "size_mean = " << exact(s.network.size_mean) << '\n'
        << "size_variance = " << exact(s.network.size_variance) << '\n'
        << "min_board_size = " << s.network.min_board_size << '\n'
        << "init_mode = " << name_of(s.init.mode) << '\n'
        << "gamma = " << exact(s.init.gamma) << '\n'
        << "initial_share = " << exact(s.init.initial_share) << '\n'
        << "retire_rate = " << exact(s.dynamics.retire_rate) << '\n'
        << "g_f = " << exact(s.dynamics.g_f) << '\n'
        << "target_share = " << exact(s.dynamics.target_share) << '\n'
        << "lambda_mode = " << name_of(s.dynamics.lambda_mode) << '\n'
        << "lambda_bar = " << exact(s.dynamics.lambda_bar) << '\n'
        << "g_lambda = " << exact(s.dynamics.g_lambda) << '\n'
        << "y_m = " << exact(s.dynamics.y_m) << '\n'
        << "beta = " << exact(s.dynamics.beta) << '\n'
        << "growth_mode = " << name_of(s.dynamics.growth_mode) << '\n'
        << "growth_form = " << name_of(s.dynamics.growth_form) << '\n'
        << "endo_application = " << name_of(s.dynamics.endo_application) << '\n'
        << "years = " << s.dynamics.horizon_years << '\n'
        << "runs = " << s.runs << '\n'
        << "master_seed = " << s.master_seed << '\n';
    return out.str();
}

std::string format_number(double value)
{
    if (std::isnan(value)) {
        return {};
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

std::vector<std::string> csv_columns()
{
    std::vector<std::string> cols = {"year"};
    for (const auto& f : record_fields()) {
        cols.push_back(f.name + "_mean");
        cols.push_back(f.name + "_std");
    }
    return cols;
}

void write_aggregate_csv(std::ostream& out, const RunAggregate& aggregate)
{
    const auto cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << cols[i];
    }
    out << '\n';
    for (std::size_t y = 0; y < aggregate.years.size(); ++y) {
        out << y;
        for (const auto& s : aggregate.years[y]) {
            out << ',' << format_number(s.mean) << ',' << format_number(s.std);
        }
        out << '\n';
    }
}

std::optional<std::size_t> CsvTable::column(std::string_view name) const
{
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<double> CsvTable::series(std::string_view name) const
{
    const auto idx = column(name);
    if (!idx) {
        throw std::invalid_argument("CSV has no column '" + std::string(name) + "'");
    }
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(row[*idx]);
    }
    return out;
}

CsvTable read_csv(std::istream& in)
{
    CsvTable table;
    std::string line;
    auto split = [](const std::string& text) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ss(text);
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (!text.empty() && text.back() == ',') {
            cells.emplace_back();
        }
        return cells;
    };
    if (!std::getline(in, line)) {
        throw std::runtime_error("empty CSV");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    table.columns = split(line);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto cells = split(line);
        if (cells.size() != table.columns.size()) {
            throw std::runtime_error("CSV row has " + std::to_string(cells.size()) +
                                     " cells, header has " + std::to_string(table.columns.size()));
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            row.push_back(c.empty() ? std::nan("") : std::strtod(c.c_str(), nullptr));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    return read_csv(in);
}

void write_manifest(std::ostream& out, const std::vector<ScenarioSpec>& specs, const ManifestInfo& info)
{
    nlohmann::ordered_json doc;
    doc["tool"] = "boardsim";
    doc["version"] = std::string(kToolVersion);
    doc["wall_seconds"] = info.wall_seconds;
    doc["threads"] = info.threads;
    doc["outputs"] = info.outputs;
    auto& list = doc["scenarios"] = nlohmann::ordered_json::array();
    for (const auto& s : specs) {
        nlohmann::ordered_json entry;
        entry["scenario"] = std::string(to_string(s.id));
        entry["master_seed"] = s.master_seed;
        entry["config"] = format_config(s);
        list.push_back(std::move(entry));
    }
    out << doc.dump(2) << '\n';
}

} // namespace boardsim
