#ifndef BOARDSIM_IO_HPP
#define BOARDSIM_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "boardsim/scenarios.hpp"

namespace boardsim {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Raised for bad configuration input; key() names the offending setting.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(std::move(key))
    {
    }
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Keys accepted by apply_setting / config files, in documentation order.
const std::vector<std::string>& config_keys();

/// Sets one ScenarioSpec field from text. Throws ConfigError on unknown keys or bad values.
void apply_setting(ScenarioSpec& spec, std::string_view key, std::string_view value);

/// Parses flat `key = value` lines ('#' starts a comment). A `scenario` key,
/// if present, selects the preset applied before the remaining keys.
ScenarioSpec parse_config(std::istream& in, const std::string& source = "<config>");
ScenarioSpec load_config(const std::filesystem::path& path);

/// Echo of every setting as `key = value` lines; parse_config reads it back.
std::string format_config(const ScenarioSpec& spec);

/// Column names of the aggregate CSV, in order.
std::vector<std::string> csv_columns();

/// One row per year: `year`, then `<field>_mean,<field>_std` for every record
/// field. Numbers use 9 significant digits; fields with no contributing run are empty.
void write_aggregate_csv(std::ostream& out, const RunAggregate& aggregate);

std::string format_number(double value);

/// Parsed aggregate CSV: column name -> per-year values (NaN for empty cells).
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::optional<std::size_t> column(std::string_view name) const;
    std::vector<double> series(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

struct ManifestInfo {
    double wall_seconds = 0.0;
    int threads = 1;
    std::vector<std::string> outputs;
};

void write_manifest(std::ostream& out, const std::vector<ScenarioSpec>& specs, const ManifestInfo& info);

} // namespace boardsim

#endif // BOARDSIM_IO_HPP
