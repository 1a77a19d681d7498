#ifndef BOARDSIM_PLOT_HPP
#define BOARDSIM_PLOT_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace boardsim {

struct PlotSeries {
    std::string label;
    std::vector<double> mean;
    std::vector<double> std; // may be empty: no band
};

// Deterministic SVG writers (no timestamps, fixed number formatting).
void write_line_chart_svg(std::ostream& out, const std::string& title,
                          const std::vector<PlotSeries>& series);
// grid[year][bin]; color scale centered on 1 (proportional representation).
void write_heatmap_svg(std::ostream& out, const std::string& title,
                       const std::vector<std::vector<double>>& grid);

/// Fields accepted by plot_csvs: every record field plus `rep_bins`.
std::vector<std::string> plottable_fields();

struct PlotResult {
    std::vector<std::filesystem::path> files;
};

/// Line chart of `fields` (mean with +-1 std band) for each CSV at out_path;
/// `rep_bins` additionally writes one heatmap per CSV next to it. A
/// `<stem>.summary.json` records each curve's peak year and value.
/// Throws ConfigError for an empty field list or an unknown field.
PlotResult plot_csvs(const std::vector<std::filesystem::path>& csvs,
                     const std::vector<std::string>& fields, const std::filesystem::path& out_path);

} // namespace boardsim

#endif // BOARDSIM_PLOT_HPP
