#include "boardsim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "boardsim/io.hpp"
#include "boardsim/metrics.hpp"
#include "boardsim/scenarios.hpp"

namespace boardsim {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape(const std::string& text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

void write_line_chart_svg(std::ostream& out, const std::string& title,
                          const std::vector<PlotSeries>& series)
{
    std::size_t years = 0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& s : series) {
        years = std::max(years, s.mean.size());
        for (std::size_t i = 0; i < s.mean.size(); ++i) {
            if (std::isnan(s.mean[i])) {
                continue;
            }
            const double band = i < s.std.size() && !std::isnan(s.std[i]) ? s.std[i] : 0.0;
            lo = std::min(lo, s.mean[i] - band);
            hi = std::max(hi, s.mean[i] + band);
        }
    }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12) {
        hi = lo + 1.0;
    }
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const double x_span = years > 1 ? static_cast<double>(years - 1) : 1.0;
    auto px = [&](std::size_t i) { return kLeft + plot_w * static_cast<double>(i) / x_span; };
    auto py = [&](double v) { return kTop + plot_h * (1.0 - (v - lo) / (hi - lo)); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(title) << "</text>\n"
        << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(plot_w)
        << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double v = lo + (hi - lo) * t / 4.0;
        out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(v) + 4)
            << "\" text-anchor=\"end\">" << format_number(std::round(v * 1e4) / 1e4) << "</text>\n";
    }
    const std::size_t tick = years > 40 ? 10 : 5;
    for (std::size_t y = 0; y < years; y += tick) {
        out << "<text x=\"" << num(px(y)) << "\" y=\"" << num(kTop + plot_h + 18)
            << "\" text-anchor=\"middle\">" << y << "</text>\n";
    }
    out << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 8)
        << "\" text-anchor=\"middle\">year</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % std::size(kPalette)];
        if (!s.std.empty()) {
            std::string upper;
            std::string lower;
            for (std::size_t i = 0; i < s.mean.size(); ++i) {
                if (std::isnan(s.mean[i])) {
                    continue;
                }
                const double band = i < s.std.size() && !std::isnan(s.std[i]) ? s.std[i] : 0.0;
                upper += num(px(i)) + "," + num(py(s.mean[i] + band)) + " ";
                lower.insert(0, num(px(i)) + "," + num(py(s.mean[i] - band)) + " ");
            }
            out << "<polygon points=\"" << upper << lower << "\" fill=\"" << color
                << "\" fill-opacity=\"0.18\" stroke=\"none\"/>\n";
        }
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
        for (std::size_t i = 0; i < s.mean.size(); ++i) {
            if (!std::isnan(s.mean[i])) {
                out << num(px(i)) << ',' << num(py(s.mean[i])) << ' ';
            }
        }
        out << "\"/>\n";
        const double ly = kTop + 14.0 + 18.0 * static_cast<double>(k);
        out << "<line x1=\"" << num(kWidth - kRight + 10) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
            << num(kWidth - kRight + 30) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << num(kWidth - kRight + 35) << "\" y=\"" << num(ly) << "\">"
            << escape(s.label) << "</text>\n";
    }
    out << "</svg>\n";
}

void write_heatmap_svg(std::ostream& out, const std::string& title,
                       const std::vector<std::vector<double>>& grid)
{
    const std::size_t years = grid.size();
    const std::size_t bins = years == 0 ? 0 : grid.front().size();
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const double cw = years ? plot_w / static_cast<double>(years) : plot_w;
    const double ch = bins ? plot_h / static_cast<double>(bins) : plot_h;

    // Diverging scale: blue below 1, red above, white at 1; saturates at 0 and 2.
    auto color = [](double v) {
        if (std::isnan(v)) {
            return std::string("#cccccc");
        }
        const double t = std::clamp(v - 1.0, -1.0, 1.0);
        const int fade = static_cast<int>(std::lround(255.0 * (1.0 - std::abs(t))));
        char buf[8];
        if (t >= 0) {
            std::snprintf(buf, sizeof(buf), "#ff%02x%02x", fade, fade);
        } else {
            std::snprintf(buf, sizeof(buf), "#%02x%02xff", fade, fade);
        }
        return std::string(buf);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(title) << "</text>\n";
    for (std::size_t y = 0; y < years; ++y) {
        for (std::size_t b = 0; b < bins; ++b) {
            out << "<rect x=\"" << num(kLeft + cw * static_cast<double>(y)) << "\" y=\""
                << num(kTop + ch * static_cast<double>(b)) << "\" width=\"" << num(cw + 0.3)
                << "\" height=\"" << num(ch + 0.3) << "\" fill=\"" << color(grid[y][b]) << "\"/>\n";
        }
    }
    out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(kTop + 10)
        << "\" text-anchor=\"end\">most central</text>\n"
        << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(kTop + plot_h)
        << "\" text-anchor=\"end\">least</text>\n"
        << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 8)
        << "\" text-anchor=\"middle\">year</text>\n"
        << "<text x=\"" << num(kWidth - kRight + 10) << "\" y=\"" << num(kTop + 14)
        << "\">red &gt; 1 &gt; blue</text>\n"
        << "</svg>\n";
}

std::vector<std::string> plottable_fields()
{
    std::vector<std::string> out;
    for (const auto& f : record_fields()) {
        out.push_back(f.name);
    }
    out.emplace_back("rep_bins");
    return out;
}

PlotResult plot_csvs(const std::vector<std::filesystem::path>& csvs,
                     const std::vector<std::string>& fields, const std::filesystem::path& out_path)
{
    const auto valid = plottable_fields();
    if (fields.empty()) {
        std::string list;
        for (const auto& v : valid) {
            list += (list.empty() ? "" : ", ") + v;
        }
        throw ConfigError("fields", "no fields given; valid fields: " + list);
    }
    for (const auto& f : fields) {
        if (std::find(valid.begin(), valid.end(), f) == valid.end()) {
            std::string list;
            for (const auto& v : valid) {
                list += (list.empty() ? "" : ", ") + v;
            }
            throw ConfigError("fields", "unknown field '" + f + "'; valid fields: " + list);
        }
    }
    if (csvs.empty()) {
        throw ConfigError("csv", "no CSV files given");
    }

    std::vector<CsvTable> tables;
    for (const auto& path : csvs) {
        tables.push_back(read_csv(path));
    }

    PlotResult result;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    std::vector<PlotSeries> series;
    for (std::size_t t = 0; t < tables.size(); ++t) {
        const std::string stem = csvs[t].stem().string();
        auto& entry = summary[stem] = nlohmann::ordered_json::object();
        for (const auto& f : fields) {
            if (f == "rep_bins") {
                continue;
            }
            PlotSeries s;
            s.label = tables.size() > 1 ? stem + ":" + f : f;
            s.mean = tables[t].series(f + "_mean");
            s.std = tables[t].series(f + "_std");
            std::size_t peak = 0;
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < s.mean.size(); ++i) {
                if (!std::isnan(s.mean[i]) && s.mean[i] > best) {
                    best = s.mean[i];
                    peak = i;
                }
            }
            entry[f] = {{"peak_year", peak},
                        {"peak_mean", std::isfinite(best) ? best : 0.0},
                        {"final_mean", s.mean.empty() ? 0.0 : s.mean.back()}};
            series.push_back(std::move(s));
        }
    }

    if (out_path.has_parent_path()) {
        std::filesystem::create_directories(out_path.parent_path());
    }
    if (!series.empty()) {
        std::ofstream svg(out_path);
        if (!svg) {
            throw std::runtime_error("cannot write '" + out_path.string() + "'");
        }
        std::string title;
        for (const auto& p : csvs) {
            title += (title.empty() ? "" : ", ") + p.stem().string();
        }
        write_line_chart_svg(svg, title, series);
        result.files.push_back(out_path);
    }
    if (std::find(fields.begin(), fields.end(), "rep_bins") != fields.end()) {
        for (std::size_t t = 0; t < tables.size(); ++t) {
            std::vector<std::vector<double>> grid(tables[t].rows.size());
            for (std::size_t b = 1; b <= kRepresentationBins; ++b) {
                char col[32];
                std::snprintf(col, sizeof(col), "rep_bin_%02zu_mean", b);
                const auto values = tables[t].series(col);
                for (std::size_t y = 0; y < values.size(); ++y) {
                    grid[y].push_back(values[y]);
                }
            }
            auto path = out_path;
            path.replace_filename(out_path.stem().string() + "_rep_bins_" + csvs[t].stem().string() + ".svg");
            std::ofstream svg(path);
            if (!svg) {
                throw std::runtime_error("cannot write '" + path.string() + "'");
            }
            write_heatmap_svg(svg, csvs[t].stem().string() + ": representation by centrality bin", grid);
            result.files.push_back(path);
        }
    }

    auto summary_path = out_path;
    summary_path.replace_filename(out_path.stem().string() + ".summary.json");
    std::ofstream js(summary_path);
    js << summary.dump(2) << '\n';
    result.files.push_back(summary_path);
    return result;
}

} // namespace boardsim
