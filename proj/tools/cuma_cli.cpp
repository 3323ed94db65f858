// cuma: closed-form analysis, Monte-Carlo simulation and figure sweeps for
// fluid-antenna CUMA networks.

#include "cuma/analytic.hpp"
#include "cuma/approx.hpp"
#include "cuma/config.hpp"
#include "cuma/error.hpp"
#include "cuma/harness.hpp"
#include "cuma/montecarlo.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kNumerical = 3;

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::string out;
    std::string preset;
    std::optional<double> quad_tol;
    std::optional<int> users;
    std::optional<double> delta;
    std::string eve_preset;
    std::optional<double> eve_delta;
    std::optional<double> gamma_th;
    std::optional<double> rs;
    std::string recipe;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "YAML scenario file (schema: 1)");
    sub->add_option("--seed", f.seed, "Master seed");
    sub->add_option("--trials", f.trials, "Monte-Carlo trials");
    sub->add_option("--out", f.out, "Output path (default stdout)");
    sub->add_option("--preset", f.preset, "Bob's parameter-table case, e.g. 6GHz-NC");
    sub->add_option("--quad-tol", f.quad_tol, "Relative quadrature tolerance");
    sub->add_option("--users", f.users, "Number of users U");
    sub->add_option("--delta", f.delta, "Bob's interference-cancellation factor");
    sub->add_option("--eve-preset", f.eve_preset, "Eve's parameter-table case");
    sub->add_option("--eve-delta", f.eve_delta, "Eve's interference-cancellation factor");
    sub->add_option("--gamma-th", f.gamma_th, "Outage threshold rate in bits");
    sub->add_option("--rs", f.rs, "Target secrecy rate in bits");
}

cuma::ScenarioConfig resolve(const Flags& f) {
    cuma::ScenarioConfig c = f.config.empty() ? cuma::ScenarioConfig{} : cuma::load_config(f.config);
    if (!f.preset.empty()) {
        c.preset = f.preset;
        c.grid.reset();
    }
    if (f.seed) c.seed = *f.seed;
    if (f.trials) c.trials = *f.trials;
    if (f.quad_tol) c.quad_tol = *f.quad_tol;
    if (f.users) c.users = *f.users;
    if (f.delta) c.delta = *f.delta;
    if (!f.eve_preset.empty()) c.eve_preset = f.eve_preset;
    if (f.eve_delta) c.delta_e = *f.eve_delta;
    if (f.gamma_th) c.gamma_th = *f.gamma_th;
    if (f.rs) c.rs = *f.rs;
    c.validate();
    return c;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw cuma::DomainError("cannot write '" + path + "'");
    }
    out << text;
}

ordered_json grid_json(const cuma::PortGrid& g) {
    return {{"n1", g.n1}, {"n2", g.n2}, {"N", g.size()}, {"w1", g.w1}, {"w2", g.w2}};
}

ordered_json stats_json(const cuma::ChannelStats& s) {
    return {{"nbar", s.nbar},           {"mu", s.mu},
            {"sigma1_sq", s.sigma1_sq}, {"sigma2_sq", s.sigma2_sq},
            {"interferers", s.interferers}, {"delta", s.delta}};
}

struct Scenario {
    cuma::ScenarioConfig cfg;
    cuma::PortGrid grid_b;
    cuma::PortGrid grid_e;
    cuma::ChannelStats stats_b;
    cuma::ChannelStats stats_e;
    double beta_b = 0.0;
    double beta_e = 0.0;
};

Scenario build(const cuma::ScenarioConfig& cfg) {
    Scenario s{cfg, cfg.bob_grid(), cuma::find_preset(cfg.eve_preset).grid, {}, {}, 0.0, 0.0};
    s.stats_b = cuma::channel_stats(s.grid_b, cfg.omega, cfg.users, cfg.delta);
    s.stats_e = cuma::channel_stats(s.grid_e, cfg.omega, cfg.users, cfg.delta_e);
    s.beta_b = cuma::beta_I(s.stats_b);
    s.beta_e = cuma::beta_I(s.stats_e);
    return s;
}

ordered_json header(const Scenario& s) {
    return {{"bob", {{"grid", grid_json(s.grid_b)}, {"stats", stats_json(s.stats_b)}}},
            {"eve", {{"preset", s.cfg.eve_preset}, {"grid", grid_json(s.grid_e)}, {"stats", stats_json(s.stats_e)}}},
            {"users", s.cfg.users},
            {"gamma_th", s.cfg.gamma_th},
            {"rs", s.cfg.rs}};
}

ordered_json closed_form(const Scenario& s) {
    const auto& c = s.cfg;
    return {{"beta_I_bob", s.beta_b},
            {"beta_I_eve", s.beta_e},
            {"a0_bob", cuma::asymptote_coeffs(s.stats_b).a0},
            {"er", cuma::approx_er(c.users, s.beta_b, s.stats_b.sigma2_sq)},
            {"op", cuma::approx_op(c.gamma_th, s.beta_b, s.stats_b.sigma2_sq)},
            {"sop_lower", cuma::sop_lower_closed(s.beta_b, s.beta_e, c.rs)}};
}

struct McOut {
    ordered_json json;
    cuma::SirSamples bob;
};

McOut monte_carlo(const Scenario& s) {
    const auto& c = s.cfg;
    const cuma::SeedSpec seed{c.seed};
    cuma::SirSamples bob =
        cuma::simulate_sir(cuma::SystemConfig{s.grid_b, c.omega, c.users, c.delta}, c.trials, seed.derive("bob"));
    const cuma::SirSamples eve =
        cuma::simulate_sir(cuma::SystemConfig{s.grid_e, c.omega, c.users, c.delta_e}, c.trials, seed.derive("eve"));
    const double g[] = {c.gamma_th};
    const cuma::McMetrics m = cuma::mc_metrics(bob, c.users, g);
    const auto sop = cuma::mc_sop(bob, eve, c.rs);
    const auto sop_l = cuma::mc_sop_lower(bob, eve, c.rs);
    ordered_json j = {{"trials", c.trials},
                      {"seed", c.seed},
                      {"excluded", m.excluded},
                      {"redrawn", m.redrawn},
                      {"er", {{"mean", m.er.mean}, {"stderr", m.er.std_error}}},
                      {"op", {{"mean", m.op[0].mean}, {"stderr", m.op[0].std_error}}},
                      {"sop", {{"mean", sop.mean}, {"stderr", sop.std_error}}},
                      {"sop_lower", {{"mean", sop_l.mean}, {"stderr", sop_l.std_error}}}};
    return {std::move(j), std::move(bob)};
}

int cmd_presets(const Flags& f) {
    std::string text = "name,freq_ghz,compactness,n1,n2,N,w1,w2\n";
    char line[160];
    for (const auto& p : cuma::table_presets()) {
        std::snprintf(line, sizeof line, "%s,%g,%s,%d,%d,%d,%.6f,%.6f\n", p.name.c_str(), p.freq_hz / 1e9,
                      std::string(cuma::short_name(p.compactness)).c_str(), p.grid.n1, p.grid.n2, p.grid.size(),
                      p.grid.w1, p.grid.w2);
        text += line;
    }
    emit(text, f.out);
    return kOk;
}

int cmd_analyze(const Flags& f) {
    const Scenario s = build(resolve(f));
    ordered_json j = header(s);
    j["closed_form"] = closed_form(s);
    emit(j.dump(2) + "\n", f.out);
    return kOk;
}

int cmd_simulate(const Flags& f) {
    const Scenario s = build(resolve(f));
    ordered_json j = header(s);
    j["monte_carlo"] = monte_carlo(s).json;
    emit(j.dump(2) + "\n", f.out);
    return kOk;
}

int cmd_compare(const Flags& f) {
    const Scenario s = build(resolve(f));
    const auto& c = s.cfg;
    ordered_json j = header(s);
    j["closed_form"] = closed_form(s);
    const cuma::ExactSir bob(s.stats_b, c.quad_tol);
    const cuma::ExactSir eve(s.stats_e, c.quad_tol);
    const double z_th = std::expm1(c.gamma_th * std::log(2.0)) * s.stats_b.sigma2_sq;
    j["exact"] = {{"er", cuma::ergodic_rate(c.users, s.stats_b.sigma2_sq, bob, c.quad_tol)},
                  {"op", bob.cdf(z_th)},
                  {"sop", cuma::secrecy_outage(bob, eve, c.rs, c.quad_tol)},
                  {"sop_lower", cuma::secrecy_outage_lower(bob, eve, c.rs, c.quad_tol)}};
    j["monte_carlo"] = monte_carlo(s).json;
    const cuma::KsReport ks = cuma::compare_distributions(
        cuma::SystemConfig{s.grid_b, c.omega, c.users, c.delta}, c.trials, cuma::SeedSpec{c.seed}.derive("bob"),
        c.quad_tol);
    j["ks"] = {{"total_vs_exponential", ks.ks_total_approx},
               {"total_vs_exponential_beta_x2", ks.ks_total_wrong_beta},
               {"inphase_vs_gamma_half", ks.ks_inphase_gamma},
               {"inphase_vs_exact", ks.ks_inphase_exact}};
    emit(j.dump(2) + "\n", f.out);
    return kOk;
}

int cmd_sweep(const Flags& f) {
    cuma::SweepSpec spec;
    const cuma::ScenarioConfig base = f.config.empty() ? cuma::ScenarioConfig{} : cuma::load_config(f.config);
    if (!f.recipe.empty()) {
        spec = cuma::figure_recipe(f.recipe);
        spec.quad_tol = base.quad_tol;
        spec.seed = base.seed;
    } else if (base.sweep) {
        spec = *base.sweep;
    } else {
        throw cuma::DomainError("sweep: give --recipe or a config with a 'sweep' section");
    }
    if (!f.preset.empty()) {
        throw cuma::DomainError("sweep: --preset conflicts with the series of a sweep; edit the config instead");
    }
    if (f.seed) spec.seed = *f.seed;
    if (f.trials) spec.trials = *f.trials;
    if (f.quad_tol) spec.quad_tol = *f.quad_tol;
    if (f.users) spec.users = *f.users;
    if (f.gamma_th) spec.gamma_th = *f.gamma_th;
    if (f.rs) spec.rs = *f.rs;
    emit(cuma::to_csv(cuma::run_sweep(spec)), f.out);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fluid-antenna CUMA performance analysis"};
    app.require_subcommand(1);
    Flags f;

    auto* presets = app.add_subcommand("presets", "List the parameter-table cases");
    presets->add_option("--out", f.out, "Output path (default stdout)");
    auto* analyze = app.add_subcommand("analyze", "Closed-form metrics for one scenario");
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo metrics for one scenario");
    auto* compare = app.add_subcommand("compare", "Closed-form, exact and Monte-Carlo metrics with KS statistics");
    auto* sweep = app.add_subcommand("sweep", "Run a figure recipe or a configured sweep and write CSV");
    for (auto* sub : {analyze, simulate, compare, sweep}) {
        add_common(sub, f);
    }
    sweep->add_option("--recipe", f.recipe, "Figure recipe: fig2a fig2b fig2c fig3 fig4 fig5 fig6 fig7");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (presets->parsed()) return cmd_presets(f);
        if (analyze->parsed()) return cmd_analyze(f);
        if (simulate->parsed()) return cmd_simulate(f);
        if (compare->parsed()) return cmd_compare(f);
        if (sweep->parsed()) return cmd_sweep(f);
    } catch (const cuma::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const cuma::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    return kValidation;
}
