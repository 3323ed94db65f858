#pragma once

#include "cuma/geometry.hpp"
#include "cuma/montecarlo.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cuma {

enum class SweepAxis { users, secrecy_rate, ic_factor, ports };
enum class Metric { er, op, sop, sop_lower };

std::string_view to_string(SweepAxis axis);
std::string_view to_string(Metric metric);
SweepAxis parse_axis(std::string_view name);
Metric parse_metric(std::string_view name);

/// One curve of a sweep. Bob's layout comes from `preset` or, for the ports
/// axis, from `grid` (n1, w1, w2 fixed; n2 follows the axis value).
struct SeriesSpec {
    std::string label;
    std::string preset;
    std::optional<PortGrid> grid;
    std::string eve_preset;  ///< required for sop / sop_lower
    double delta_b = 1.0;
    double delta_e = 1.0;
};

struct SweepSpec {
    std::string name;
    SweepAxis axis = SweepAxis::users;
    std::vector<double> axis_values;
    std::vector<Metric> metrics;
    std::vector<SeriesSpec> series;

    int users = 20;          ///< fixed U when the axis is not users
    double rs = 1.0;         ///< fixed secrecy rate when the axis is not secrecy_rate
    double gamma_th = 1.0;   ///< outage threshold in bits
    double omega = 1.0;

    int trials = 10000;      ///< 0 disables Monte-Carlo
    std::uint64_t seed = 1;
    double quad_tol = 1e-6;
    bool analytic_exact = true;
    int exact_max_users = 20;  ///< exact integrals only for U at or below this
    int mc_max_ports = 2100;   ///< Monte-Carlo skipped above this port count
};

/// Throws DomainError on an inconsistent spec.
void validate(const SweepSpec& spec);

struct ReportRow {
    std::string series;
    double axis_value = 0.0;
    Metric metric = Metric::er;
    std::optional<double> analytic_approx;
    std::optional<double> analytic_exact;
    std::optional<double> mc_mean;
    std::optional<double> mc_stderr;
    int trials = 0;
    std::uint64_t seed = 0;
};

struct ComparisonReport {
    std::string name;
    std::vector<ReportRow> rows;

    /// Rows of one series and metric, in axis order.
    std::vector<ReportRow> select(std::string_view series, Metric metric) const;
};

/// Evaluates every (series, axis point, metric). Monte-Carlo uses the same
/// seed at every axis point so neighbouring points share random numbers.
ComparisonReport run_sweep(const SweepSpec& spec);

void write_csv(const ComparisonReport& report, std::ostream& os);
std::string to_csv(const ComparisonReport& report);

/// Named figure recipes: fig2a fig2b fig2c fig3 fig4 fig5 fig6 fig7.
std::vector<std::string> recipe_names();
SweepSpec figure_recipe(std::string_view name);

struct KsReport {
    double beta = 0.0;
    double sigma2_sq = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    double ks_total_approx = 0.0;        ///< sigma2^2 * sir vs 1 - e^{-z/beta}
    double ks_total_wrong_beta = 0.0;    ///< same with beta doubled
    double ks_inphase_gamma = 0.0;       ///< sigma2^2 * sir_I vs Gamma(1/2, beta)
    double ks_inphase_exact = 0.0;       ///< sir_I vs the exact in-phase CDF
};

/// Kolmogorov-Smirnov comparison of simulated SIR samples with the analytic laws.
KsReport compare_distributions(const SystemConfig& config, int trials, const SeedSpec& seed,
                               double quad_tol = 1e-6);

}  // namespace cuma
