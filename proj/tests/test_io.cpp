#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include <json.hpp>

#include "boardsim/io.hpp"
#include "boardsim/plot.hpp"
#include "oracles.hpp"

using namespace boardsim;

namespace {

std::string config_error_key(const std::string& text)
{
    std::istringstream in(text);
    try {
        parse_config(in);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "<none>";
}

RunAggregate tiny_aggregate()
{
    ScenarioSpec spec = preset(ScenarioId::A);
    spec.network.firms = 60;
    spec.runs = 4;
    spec.dynamics.horizon_years = 6;
    return run_monte_carlo(spec);
}

} // namespace

TEST_SUITE("io")
{
    TEST_CASE("config files map onto a scenario")
    {
        std::istringstream in(R"(# desk run
scenario = B
firms = 200   # small
runs = 50
master_seed = 9
)");
        const auto s = parse_config(in);
        CHECK(s.id == ScenarioId::B);
        CHECK(s.name == "B");
        CHECK(s.init.mode == InitMode::biased);
        CHECK(s.network.firms == 200);
        CHECK(s.runs == 50);
        CHECK(s.master_seed == 9);
    }

    TEST_CASE("model overrides turn a preset into a custom scenario")
    {
        std::istringstream in("beta = 1.5\nscenario = C\nlambda_bar = 0.7\n");
        const auto s = parse_config(in);
        CHECK(s.id == ScenarioId::custom);
        CHECK(s.name == "C_custom");
        CHECK(s.dynamics.lambda_mode == LambdaMode::fixed);
        CHECK(s.dynamics.beta == 1.5);
        CHECK(s.dynamics.lambda_bar == 0.7);

        std::istringstream named("scenario = A\ng_f = 0.2\nname = faster\n");
        CHECK(parse_config(named).name == "faster");
    }

    TEST_CASE("config errors name the offending key")
    {
        CHECK(config_error_key("bogus_key = 3\n") == "bogus_key");
        CHECK(config_error_key("beta = lots\n") == "beta");
        CHECK(config_error_key("firms = -4\n") == "firms");
        CHECK(config_error_key("lambda_mode = sometimes\n") == "lambda_mode");
        CHECK(config_error_key("scenario = Z\n") == "scenario");
        CHECK(config_error_key("just words\n") == "just words");
    }

    TEST_CASE("config echo round-trips exactly")
    {
        for (ScenarioId id : single_presets()) {
            ScenarioSpec s = preset(id);
            s.master_seed = 12345678901234ULL;
            std::istringstream in(format_config(s));
            const auto back = parse_config(in);
            CHECK(format_config(back) == format_config(s));
            CHECK(back.dynamics.target_share == s.dynamics.target_share);
            CHECK(back.dynamics.y_m == s.dynamics.y_m);
            CHECK(back.master_seed == s.master_seed);
            CHECK(back.init.mode == s.init.mode);
            CHECK(back.init.gamma == s.init.gamma);
        }
    }

    TEST_CASE("csv schema")
    {
        const auto cols = csv_columns();
        REQUIRE(cols.size() == 61);
        CHECK(cols[0] == "year");
        CHECK(cols[1] == "inflow_x_mean");
        CHECK(cols[2] == "inflow_x_std");
        CHECK(cols[3] == "share_F_mean");
        CHECK(cols[5] == "lambda_mean");
        CHECK(cols[7] == "net_homophily_mean");
        CHECK(cols[9] == "perc_F_by_F_mean");
        CHECK(cols[11] == "perc_F_by_M_mean");
        CHECK(cols[13] == "perc_F_by_all_mean");
        CHECK(cols[15] == "delta_s_mean");
        CHECK(cols[17] == "fstar_mean");
        CHECK(cols[18] == "fstar_std");
        CHECK(cols[19] == "fstar_cv_mean");
        CHECK(cols[21] == "rep_bin_01_mean");
        CHECK(cols[60] == "rep_bin_20_std");
    }

    TEST_CASE("number formatting")
    {
        CHECK(format_number(0.1234567891234) == "0.123456789");
        CHECK(format_number(1.0) == "1");
        CHECK(format_number(std::nan("")) == "");
        CHECK(format_number(12345.678912345) == "12345.6789");
    }

    TEST_CASE("aggregate csv round trip")
    {
        const auto agg = tiny_aggregate();
        std::ostringstream out;
        write_aggregate_csv(out, agg);
        std::istringstream in(out.str());
        const auto table = read_csv(in);
        CHECK(table.columns == csv_columns());
        REQUIRE(table.rows.size() == 7);
        const auto share = table.series("share_F_mean");
        for (std::size_t y = 0; y < 7; ++y) {
            CHECK(share[y] == doctest::Approx(agg.at(y, "share_F").mean).epsilon(1e-8));
            CHECK(table.rows[y][0] == static_cast<double>(y));
        }
    }

    TEST_CASE("missing values are empty cells")
    {
        // No women ever: female self-perception is undefined in every year.
        ScenarioSpec spec = preset(ScenarioId::A);
        spec.network.firms = 40;
        spec.runs = 2;
        spec.dynamics.horizon_years = 2;
        spec.init.initial_share = 0.0;
        std::ostringstream out;
        write_aggregate_csv(out, run_monte_carlo(spec));
        std::istringstream in(out.str());
        const auto table = read_csv(in);
        for (double v : table.series("perc_F_by_F_mean")) CHECK(std::isnan(v));
        CHECK(out.str().find(",,") != std::string::npos);
    }

    TEST_CASE("manifest")
    {
        std::ostringstream out;
        write_manifest(out, {preset(ScenarioId::D)}, {1.5, 3, {"D.csv"}});
        const auto doc = nlohmann::json::parse(out.str());
        CHECK(doc["version"] == std::string(kToolVersion));
        CHECK(doc["threads"] == 3);
        CHECK(doc["outputs"][0] == "D.csv");
        CHECK(doc["scenarios"][0]["scenario"] == "D");
        CHECK(doc["scenarios"][0]["master_seed"] == 1);
        std::istringstream cfg(doc["scenarios"][0]["config"].get<std::string>());
        CHECK(parse_config(cfg).dynamics.target_share == 1.0 / 6.0);
    }

    TEST_CASE("plots are deterministic and validate fields")
    {
        const auto dir = oracle::scratch_dir("io_plot");
        const auto csv = dir / "A.csv";
        {
            std::ofstream f(csv);
            write_aggregate_csv(f, tiny_aggregate());
        }
        CHECK_THROWS_AS(plot_csvs({csv}, {}, dir / "p.svg"), ConfigError);
        try {
            plot_csvs({csv}, {"nope"}, dir / "p.svg");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("net_homophily") != std::string::npos);
        }
        const auto r1 = plot_csvs({csv}, {"net_homophily", "rep_bins"}, dir / "one.svg");
        const auto r2 = plot_csvs({csv}, {"net_homophily", "rep_bins"}, dir / "two.svg");
        REQUIRE(r1.files.size() == r2.files.size());
        CHECK(r1.files.size() == 3);
        CHECK(oracle::slurp(dir / "one.svg") == oracle::slurp(dir / "two.svg"));
        CHECK(oracle::slurp(dir / "one.svg").rfind("<svg", 0) == 0);
        const auto js = nlohmann::json::parse(oracle::slurp(dir / "one.summary.json"));
        CHECK(js["A"]["net_homophily"].contains("peak_year"));
    }
}
