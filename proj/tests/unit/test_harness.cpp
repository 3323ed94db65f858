#include "cuma/config.hpp"
#include "cuma/error.hpp"
#include "cuma/harness.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

using namespace cuma;

SweepSpec small_spec() {
    SweepSpec s;
    s.name = "small";
    s.axis = SweepAxis::users;
    s.axis_values = {4, 8};
    s.metrics = {Metric::er, Metric::op, Metric::sop};
    SeriesSpec ss;
    ss.label = "nc";
    ss.preset = "6GHz-NC";
    ss.eve_preset = "6GHz-NC";
    s.series = {ss};
    s.trials = 1000;
    s.seed = 5;
    return s;
}

TEST(Names, RoundTrip) {
    for (const auto a : {SweepAxis::users, SweepAxis::secrecy_rate, SweepAxis::ic_factor, SweepAxis::ports}) {
        EXPECT_EQ(parse_axis(to_string(a)), a);
    }
    for (const auto m : {Metric::er, Metric::op, Metric::sop, Metric::sop_lower}) {
        EXPECT_EQ(parse_metric(to_string(m)), m);
    }
    EXPECT_THROW(parse_axis("snr"), DomainError);
    EXPECT_THROW(parse_metric("ber"), DomainError);
}

TEST(Spec, Validation) {
    EXPECT_NO_THROW(validate(small_spec()));
    SweepSpec s = small_spec();
    s.trials = 10;
    EXPECT_THROW(validate(s), DomainError);
    s = small_spec();
    s.series[0].eve_preset.clear();
    EXPECT_THROW(validate(s), DomainError);
    s = small_spec();
    s.axis = SweepAxis::ports;
    EXPECT_THROW(validate(s), DomainError);
    s = small_spec();
    s.axis_values.clear();
    EXPECT_THROW(validate(s), DomainError);
    s = small_spec();
    s.metrics.clear();
    EXPECT_THROW(validate(s), DomainError);
    EXPECT_THROW(run_sweep(s), DomainError);
}

TEST(Sweep, RowsCsvAndReproducibility) {
    const ComparisonReport r = run_sweep(small_spec());
    ASSERT_EQ(r.rows.size(), 6u);
    const auto er = r.select("nc", Metric::er);
    ASSERT_EQ(er.size(), 2u);
    EXPECT_EQ(er[0].axis_value, 4.0);
    for (const auto& row : r.rows) {
        EXPECT_TRUE(row.analytic_approx.has_value());
        EXPECT_TRUE(row.analytic_exact.has_value());
        EXPECT_TRUE(row.mc_mean.has_value());
        EXPECT_EQ(row.trials, 1000);
        EXPECT_EQ(row.seed, 5u);
    }
    const std::string csv = to_csv(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "series,axis_value,metric,analytic_approx,analytic_exact,mc_mean,mc_stderr,trials,seed");
    EXPECT_EQ(csv, to_csv(run_sweep(small_spec())));
}

TEST(Sweep, DisabledMonteCarloLeavesEmptyCells) {
    SweepSpec s = small_spec();
    s.trials = 0;
    s.metrics = {Metric::er};
    s.axis_values = {4};
    const ComparisonReport r = run_sweep(s);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_FALSE(r.rows[0].mc_mean.has_value());
    const std::string csv = to_csv(r);
    EXPECT_NE(csv.find(",,,0,"), std::string::npos) << csv;
}

TEST(Sweep, PortsAxisScalesBobGrid) {
    SweepSpec s;
    s.axis = SweepAxis::ports;
    s.axis_values = {14, 28};
    s.metrics = {Metric::sop_lower};
    SeriesSpec ss;
    ss.label = "g";
    ss.grid = make_grid(7, 2, 3.0, 1.5);
    ss.eve_preset = "6GHz-NC";
    s.series = {ss};
    s.trials = 0;
    const ComparisonReport r = run_sweep(s);
    ASSERT_EQ(r.rows.size(), 2u);
    s.axis_values = {15};
    EXPECT_THROW(run_sweep(s), DomainError);
}

TEST(Recipes, AllBuildAndValidate) {
    const auto names = recipe_names();
    EXPECT_EQ(names.size(), 8u);
    for (const auto& n : names) {
        const SweepSpec s = figure_recipe(n);
        EXPECT_NO_THROW(validate(s)) << n;
    }
    EXPECT_THROW(figure_recipe("fig9"), DomainError);
    EXPECT_EQ(figure_recipe("fig2b").series[2].preset, "26GHz-VC");
}

TEST(ConfigFile, ParsesScenarioAndSweep) {
    const ScenarioConfig c = parse_config(R"(schema: 1
preset: 26GHz-C
users: 12
delta: 0.5
eve: {preset: 6GHz-VC, delta: 0.8}
rs: 2.0
trials: 5000
seed: 9
sweep:
  axis: secrecy_rate
  values: [0, 1]
  metrics: [sop]
  series:
    - {label: a, preset: 6GHz-VC, eve_preset: 6GHz-NC}
)");
    EXPECT_EQ(c.preset, "26GHz-C");
    EXPECT_EQ(c.users, 12);
    EXPECT_EQ(c.delta, 0.5);
    EXPECT_EQ(c.eve_preset, "6GHz-VC");
    EXPECT_EQ(c.delta_e, 0.8);
    EXPECT_EQ(c.seed, 9u);
    ASSERT_TRUE(c.sweep.has_value());
    EXPECT_EQ(c.sweep->axis, SweepAxis::secrecy_rate);
    EXPECT_EQ(c.bob_grid(), find_preset("26GHz-C").grid);
}

TEST(ConfigFile, ExplicitGridAndRecipe) {
    const ScenarioConfig c = parse_config("schema: 1\ngrid: {n1: 5, n2: 3, w1: 2.0, w2: 1.0}\nsweep: {recipe: fig6}\n");
    EXPECT_EQ(c.bob_grid(), make_grid(5, 3, 2.0, 1.0));
    ASSERT_TRUE(c.sweep.has_value());
    EXPECT_EQ(c.sweep->axis, SweepAxis::ic_factor);
}

TEST(ConfigFile, Rejections) {
    EXPECT_THROW(parse_config("preset: 6GHz-NC\n"), DomainError);
    EXPECT_THROW(parse_config("schema: 2\n"), DomainError);
    EXPECT_THROW(parse_config("schema: 1\nfoo: 1\n"), DomainError);
    EXPECT_THROW(parse_config("schema: 1\nusers: [\n"), DomainError);
    EXPECT_THROW(parse_config("schema: 1\nusers: 1\n"), DomainError);
    EXPECT_THROW(parse_config("schema: 1\npreset: 9GHz-NC\n"), DomainError);
    EXPECT_THROW(parse_config("schema: 1\ntrials: 50\n"), DomainError);
    EXPECT_THROW(load_config("/nonexistent/cuma.yaml"), DomainError);
}

#ifdef CUMA_CLI_PATH
int run_cli(const std::string& args) {
    const std::string cmd = std::string(CUMA_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("presets"), 0);
    EXPECT_EQ(run_cli("analyze --preset 6GHz-NC --users 10"), 0);
    EXPECT_EQ(run_cli("analyze --preset 9GHz-NC"), 2);
    EXPECT_EQ(run_cli("simulate --trials 10"), 2);
    EXPECT_EQ(run_cli("frobnicate"), 2);
    EXPECT_EQ(run_cli("analyze --config /nonexistent.yaml"), 2);
    EXPECT_EQ(run_cli("sweep --recipe fig9"), 2);
    EXPECT_EQ(run_cli("--help"), 0);
    // A tolerance below the rounding floor cannot be met.
    EXPECT_EQ(run_cli("compare --trials 1000 --quad-tol 1e-300"), 3);
}

TEST(Cli, SweepWritesCsv) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto cfg = dir / "cuma_cli_test.yaml";
    const auto out = dir / "cuma_cli_test.csv";
    {
        std::ofstream f(cfg);
        f << "schema: 1\ntrials: 1000\nsweep:\n  axis: users\n  values: [4]\n  metrics: [er]\n  trials: 1000\n"
             "  series:\n    - {label: nc, preset: 6GHz-NC}\n";
    }
    ASSERT_EQ(run_cli("sweep --config " + cfg.string() + " --seed 3 --out " + out.string()), 0);
    std::ifstream in(out);
    std::string header;
    std::string row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header, "series,axis_value,metric,analytic_approx,analytic_exact,mc_mean,mc_stderr,trials,seed");
    EXPECT_EQ(row.substr(0, 8), "nc,4,er,");
    EXPECT_NE(row.find(",1000,3"), std::string::npos) << row;
    std::filesystem::remove(cfg);
    std::filesystem::remove(out);
}
#endif

}  // namespace
