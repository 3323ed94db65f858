#include "cuma/harness.hpp"

#include "cuma/analytic.hpp"
#include "cuma/approx.hpp"
#include "cuma/error.hpp"
#include "cuma/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>

namespace cuma {

namespace {

struct Named {
    std::string_view name;
    int value;
};

constexpr Named kAxes[] = {{"users", 0}, {"secrecy_rate", 1}, {"ic_factor", 2}, {"ports", 3}};
constexpr Named kMetrics[] = {{"er", 0}, {"op", 1}, {"sop", 2}, {"sop_lower", 3}};

bool needs_eve(Metric m) { return m == Metric::sop || m == Metric::sop_lower; }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

// Everything needed at one (series, axis point).
struct Point {
    PortGrid grid_b;
    int users = 0;
    double delta_b = 1.0;
    double rs = 0.0;
};

Point resolve(const SweepSpec& spec, const SeriesSpec& s, double x) {
    Point p;
    p.users = spec.users;
    p.delta_b = s.delta_b;
    p.rs = spec.rs;
    if (spec.axis == SweepAxis::ports) {
        const PortGrid& base = *s.grid;
        const int total = static_cast<int>(std::lround(x));
        if (total % base.n1 != 0) {
            throw DomainError("run_sweep: port count must be a multiple of n1 = " + std::to_string(base.n1));
        }
        p.grid_b = make_grid(base.n1, total / base.n1, base.w1, base.w2);
    } else {
        p.grid_b = s.grid ? *s.grid : find_preset(s.preset).grid;
    }
    switch (spec.axis) {
        case SweepAxis::users:
            p.users = static_cast<int>(std::lround(x));
            break;
        case SweepAxis::secrecy_rate:
            p.rs = x;
            break;
        case SweepAxis::ic_factor:
            p.delta_b = x;
            break;
        case SweepAxis::ports:
            break;
    }
    return p;
}

}  // namespace

std::string_view to_string(SweepAxis axis) { return kAxes[static_cast<int>(axis)].name; }
std::string_view to_string(Metric metric) { return kMetrics[static_cast<int>(metric)].name; }

SweepAxis parse_axis(std::string_view name) {
    for (const auto& a : kAxes) {
        if (a.name == name) {
            return static_cast<SweepAxis>(a.value);
        }
    }
    throw DomainError("unknown sweep axis '" + std::string(name) + "'");
}

Metric parse_metric(std::string_view name) {
    for (const auto& m : kMetrics) {
        if (m.name == name) {
            return static_cast<Metric>(m.value);
        }
    }
    throw DomainError("unknown metric '" + std::string(name) + "'");
}

void validate(const SweepSpec& spec) {
    if (spec.axis_values.empty()) {
        throw DomainError("sweep: axis values must not be empty");
    }
    if (spec.metrics.empty()) {
        throw DomainError("sweep: at least one metric is required");
    }
    if (spec.series.empty()) {
        throw DomainError("sweep: at least one series is required");
    }
    if (spec.trials != 0 && spec.trials < 1000) {
        throw DomainError("sweep: Monte-Carlo needs at least 1000 trials (0 disables it)");
    }
    if (!(spec.quad_tol > 0.0 && spec.quad_tol < 1e-2)) {
        throw DomainError("sweep: quad_tol must lie in (0, 1e-2)");
    }
    if (!(spec.omega > 0.0)) {
        throw DomainError("sweep: omega must be positive");
    }
    if (!(spec.gamma_th > 0.0)) {
        throw DomainError("sweep: gamma_th must be positive");
    }
    if (!(spec.rs >= 0.0)) {
        throw DomainError("sweep: rs must be nonnegative");
    }
    const bool eve = std::any_of(spec.metrics.begin(), spec.metrics.end(), needs_eve);
    for (const auto& s : spec.series) {
        if (s.label.empty()) {
            throw DomainError("sweep: every series needs a label");
        }
        if (spec.axis == SweepAxis::ports) {
            if (!s.preset.empty() || !s.grid) {
                throw DomainError("sweep: the ports axis needs an explicit base grid, not a fixed preset (series '" +
                                  s.label + "')");
            }
        } else if (s.grid) {
            make_grid(s.grid->n1, s.grid->n2, s.grid->w1, s.grid->w2);
        } else {
            find_preset(s.preset);
        }
        if (eve) {
            find_preset(s.eve_preset);
        }
        if (!(s.delta_b > 0.0 && s.delta_b <= 1.0) || !(s.delta_e > 0.0 && s.delta_e <= 1.0)) {
            throw DomainError("sweep: delta values must lie in (0, 1]");
        }
    }
    for (const double x : spec.axis_values) {
        switch (spec.axis) {
            case SweepAxis::users:
                if (x < 2 || x != std::floor(x)) {
                    throw DomainError("sweep: user counts must be integers >= 2");
                }
                break;
            case SweepAxis::secrecy_rate:
                if (!(x >= 0.0)) {
                    throw DomainError("sweep: secrecy rates must be nonnegative");
                }
                break;
            case SweepAxis::ic_factor:
                if (!(x > 0.0 && x <= 1.0)) {
                    throw DomainError("sweep: ic factors must lie in (0, 1]");
                }
                break;
            case SweepAxis::ports:
                if (x < 4 || x != std::floor(x)) {
                    throw DomainError("sweep: port counts must be integers");
                }
                break;
        }
    }
    if (spec.axis != SweepAxis::users && spec.users < 2) {
        throw DomainError("sweep: users must be at least 2");
    }
}

std::vector<ReportRow> ComparisonReport::select(std::string_view series, Metric metric) const {
    std::vector<ReportRow> out;
    for (const auto& r : rows) {
        if (r.series == series && r.metric == metric) {
            out.push_back(r);
        }
    }
    return out;
}

ComparisonReport run_sweep(const SweepSpec& spec) {
    validate(spec);
    ComparisonReport report;
    report.name = spec.name;
    const SeedSpec seed{spec.seed};
    const bool eve_needed = std::any_of(spec.metrics.begin(), spec.metrics.end(), needs_eve);

    // One eigendecomposition per distinct grid across the whole sweep.
    std::vector<std::pair<PortGrid, CorrelationMatrix>> corr_cache;
    const auto simulator = [&](const SystemConfig& cfg) {
        for (const auto& [g, c] : corr_cache) {
            if (g == cfg.grid) {
                return Simulator(cfg, c);
            }
        }
        corr_cache.emplace_back(cfg.grid, CorrelationMatrix::from_grid(cfg.grid, cfg.psd_tol));
        return Simulator(cfg, corr_cache.back().second);
    };

    for (const auto& series : spec.series) {
        for (const double x : spec.axis_values) {
            const Point p = resolve(spec, series, x);
            const ChannelStats stats_b = channel_stats(p.grid_b, spec.omega, p.users, p.delta_b);
            const double beta_b = beta_I(stats_b);

            std::optional<ChannelStats> stats_e;
            double beta_e = 0.0;
            PortGrid grid_e;
            if (eve_needed) {
                grid_e = find_preset(series.eve_preset).grid;
                stats_e = channel_stats(grid_e, spec.omega, p.users, series.delta_e);
                beta_e = beta_I(*stats_e);
            }

            const bool exact = spec.analytic_exact && p.users <= spec.exact_max_users;
            std::unique_ptr<ExactSir> exact_b;
            std::unique_ptr<ExactSir> exact_e;
            if (exact) {
                exact_b = std::make_unique<ExactSir>(stats_b, spec.quad_tol);
                if (eve_needed) {
                    exact_e = std::make_unique<ExactSir>(*stats_e, spec.quad_tol);
                }
            }

            const bool mc = spec.trials > 0 && p.grid_b.size() <= spec.mc_max_ports &&
                            (!eve_needed || grid_e.size() <= spec.mc_max_ports);
            std::optional<SirSamples> mc_b;
            std::optional<SirSamples> mc_e;
            if (mc) {
                SystemConfig cb{p.grid_b, spec.omega, p.users, p.delta_b};
                mc_b = simulate_sir(simulator(cb), spec.trials, seed.derive("bob"));
                if (eve_needed) {
                    SystemConfig ce{grid_e, spec.omega, p.users, series.delta_e};
                    mc_e = simulate_sir(simulator(ce), spec.trials, seed.derive("eve"));
                }
            }

            for (const Metric m : spec.metrics) {
                ReportRow row;
                row.series = series.label;
                row.axis_value = x;
                row.metric = m;
                row.seed = spec.seed;
                row.trials = mc ? spec.trials : 0;
                std::optional<MeanEstimate> est;
                switch (m) {
                    case Metric::er:
                        row.analytic_approx = approx_er(p.users, beta_b, stats_b.sigma2_sq);
                        if (exact_b) {
                            row.analytic_exact = ergodic_rate(p.users, stats_b.sigma2_sq, *exact_b, spec.quad_tol);
                        }
                        if (mc_b) {
                            est = mc_metrics(*mc_b, p.users, {}).er;
                        }
                        break;
                    case Metric::op: {
                        row.analytic_approx = approx_op(spec.gamma_th, beta_b, stats_b.sigma2_sq);
                        if (exact_b) {
                            const double z_th = std::expm1(spec.gamma_th * std::log(2.0)) * stats_b.sigma2_sq;
                            row.analytic_exact = exact_b->cdf(z_th);
                        }
                        if (mc_b) {
                            const double g[] = {spec.gamma_th};
                            est = mc_metrics(*mc_b, p.users, g).op.front();
                        }
                        break;
                    }
                    case Metric::sop:
                        row.analytic_approx =
                            secrecy_outage(ExponentialSir(beta_b), ExponentialSir(beta_e), p.rs, spec.quad_tol);
                        if (exact_b) {
                            row.analytic_exact = secrecy_outage(*exact_b, *exact_e, p.rs, spec.quad_tol);
                        }
                        if (mc_b) {
                            est = mc_sop(*mc_b, *mc_e, p.rs);
                        }
                        break;
                    case Metric::sop_lower:
                        row.analytic_approx = sop_lower_closed(beta_b, beta_e, p.rs);
                        if (exact_b) {
                            row.analytic_exact = secrecy_outage_lower(*exact_b, *exact_e, p.rs, spec.quad_tol);
                        }
                        if (mc_b) {
                            est = mc_sop_lower(*mc_b, *mc_e, p.rs);
                        }
                        break;
                }
                if (est) {
                    row.mc_mean = est->mean;
                    row.mc_stderr = est->std_error;
                }
                report.rows.push_back(std::move(row));
            }
        }
    }
    return report;
}

void write_csv(const ComparisonReport& report, std::ostream& os) {
    os << "series,axis_value,metric,analytic_approx,analytic_exact,mc_mean,mc_stderr,trials,seed\n";
    for (const auto& r : report.rows) {
        os << r.series << ',' << fmt(r.axis_value) << ',' << to_string(r.metric) << ',' << fmt(r.analytic_approx)
           << ',' << fmt(r.analytic_exact) << ',' << fmt(r.mc_mean) << ',' << fmt(r.mc_stderr) << ',' << r.trials
           << ',' << r.seed << '\n';
    }
}

std::string to_csv(const ComparisonReport& report) {
    std::ostringstream os;
    write_csv(report, os);
    return os.str();
}

std::vector<std::string> recipe_names() {
    return {"fig2a", "fig2b", "fig2c", "fig3", "fig4", "fig5", "fig6", "fig7"};
}

SweepSpec figure_recipe(std::string_view name) {
    SweepSpec s;
    s.name = std::string(name);
    const std::vector<double> users{4, 8, 12, 16, 20, 24, 28, 32, 36, 40};
    auto compactness_series = [](const std::string& freq) {
        std::vector<SeriesSpec> out;
        for (const char* c : {"NC", "C", "VC"}) {
            SeriesSpec ss;
            ss.label = freq + "-" + c;
            ss.preset = ss.label;
            out.push_back(ss);
        }
        return out;
    };
    auto pair = [](const std::string& bob, const std::string& eve, double delta_b) {
        SeriesSpec ss;
        ss.label = "B:" + bob + "/E:" + eve;
        ss.preset = bob;
        ss.eve_preset = eve;
        ss.delta_b = delta_b;
        return ss;
    };
    if (name == "fig2a" || name == "fig2b" || name == "fig2c") {
        const std::string freq = name == "fig2a" ? "6GHz" : name == "fig2b" ? "26GHz" : "40GHz";
        s.axis = SweepAxis::users;
        s.axis_values = users;
        s.metrics = {Metric::er};
        s.series = compactness_series(freq);
    } else if (name == "fig3") {
        s.axis = SweepAxis::users;
        s.axis_values = users;
        s.metrics = {Metric::op};
        s.series = compactness_series("6GHz");
        s.gamma_th = 1.0;
    } else if (name == "fig4") {
        s.axis = SweepAxis::secrecy_rate;
        s.axis_values = {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0};
        s.metrics = {Metric::sop, Metric::sop_lower};
        s.series = {pair("6GHz-VC", "6GHz-NC", 1.0), pair("6GHz-C", "6GHz-NC", 1.0),
                    pair("6GHz-VC", "6GHz-VC", 1.0)};
    } else if (name == "fig5") {
        s.axis = SweepAxis::users;
        s.axis_values = {4, 8, 12, 16, 20, 24, 28, 32};
        s.metrics = {Metric::sop, Metric::er};
        s.series = {pair("6GHz-VC", "6GHz-NC", 1.0), pair("26GHz-VC", "26GHz-NC", 1.0),
                    pair("40GHz-VC", "40GHz-NC", 1.0)};
    } else if (name == "fig6") {
        s.axis = SweepAxis::ic_factor;
        s.axis_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
        s.metrics = {Metric::sop};
        s.series = {pair("6GHz-VC", "6GHz-NC", 1.0), pair("6GHz-C", "6GHz-NC", 1.0),
                    pair("6GHz-NC", "6GHz-NC", 1.0)};
    } else if (name == "fig7") {
        s.axis = SweepAxis::ports;
        const PortGrid base = find_preset("6GHz-VC").grid;
        for (const int n2 : {4, 12, 22, 33}) {
            s.axis_values.push_back(static_cast<double>(base.n1 * n2));
        }
        s.metrics = {Metric::sop, Metric::sop_lower};
        for (const double d : {1.0, 0.5, 0.1}) {
            SeriesSpec ss = pair("6GHz-VC", "6GHz-NC", d);
            ss.preset.clear();
            ss.grid = base;
            ss.label = "B:VCxN/E:6GHz-NC/dB=" + fmt(d);
            s.series.push_back(ss);
        }
        s.trials = 1000;
    } else {
        throw DomainError("unknown figure recipe '" + std::string(name) + "'");
    }
    return s;
}

KsReport compare_distributions(const SystemConfig& config, int trials, const SeedSpec& seed, double quad_tol) {
    config.validate();
    if (trials < 1000) {
        throw DomainError("compare_distributions: need at least 1000 trials");
    }
    const ChannelStats stats = channel_stats(config.grid, config.omega, config.users, config.delta);
    const double beta = beta_I(stats);
    const SirSamples samples = simulate_sir(config, trials, seed);

    KsReport r;
    r.beta = beta;
    r.sigma2_sq = stats.sigma2_sq;
    r.trials = trials;
    r.seed = seed.master_seed;
    std::vector<double> total(samples.sir.size());
    std::vector<double> inphase(samples.sir_i.size());
    for (std::size_t i = 0; i < total.size(); ++i) {
        total[i] = stats.sigma2_sq * samples.sir[i];
        inphase[i] = stats.sigma2_sq * samples.sir_i[i];
    }
    r.ks_total_approx = ks_statistic(total, [beta](double z) { return approx_cdf_z(z, beta); });
    r.ks_total_wrong_beta = ks_statistic(total, [beta](double z) { return approx_cdf_z(z, 2.0 * beta); });
    r.ks_inphase_gamma = ks_statistic(inphase, [beta](double z) { return approx_cdf_zI(z, beta); });
    const ExactSir law(stats, quad_tol);
    r.ks_inphase_exact = ks_statistic(samples.sir_i, [&law](double z) { return law.inphase_cdf(z); });
    return r;
}

}  // namespace cuma
