#pragma once

#include "cuma/geometry.hpp"
#include "cuma/statistics.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace cuma {

/// Counter-based seeding: trial t draws from a generator seeded with
/// splitmix64(master_seed ^ t), so results do not depend on scheduling.
struct SeedSpec {
    std::uint64_t master_seed = 0;

    std::uint64_t trial_seed(std::uint64_t trial) const noexcept;

    /// Independent stream for a named purpose (e.g. "bob", "eve").
    SeedSpec derive(std::string_view tag) const noexcept;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// How the per-interferer activated sums are turned into interference power.
enum class InterferenceCombining {
    power_sum,  ///< sum over interferers of (sum over K of Re g)^2
    coherent,   ///< (sum over interferers and K of Re g)^2
};

struct SystemConfig {
    PortGrid grid;
    double omega = 1.0;
    int users = 20;
    double delta = 1.0;
    InterferenceCombining combining = InterferenceCombining::power_sum;
    double psd_tol = 1e-8;

    int interferers() const noexcept { return users - 1; }
    void validate() const;
};

struct ChannelRealization {
    Eigen::VectorXcd desired;
    std::vector<Eigen::VectorXcd> interferers;
};

/// g = sqrt(omega / 2) (F x + i F y) for the desired channel and each interferer,
/// all from the trial's own stream.
ChannelRealization draw_realization(const CorrelationMatrix& corr, double omega, int interferers,
                                    const SeedSpec& seed, std::uint64_t trial);

struct PortSelection {
    std::vector<int> k_i;  ///< 0-based ports with Re g > 0
    std::vector<int> k_q;  ///< 0-based ports with Im g > 0
};

PortSelection select_ports(const Eigen::VectorXcd& desired);

struct TrialResult {
    double sir = 0.0;
    double sir_i = 0.0;
    double sir_q = 0.0;
    int k_i_size = 0;
    int k_q_size = 0;
    bool valid = true;  ///< false when a branch has zero interference
};

TrialResult sir_sample(const ChannelRealization& real, double delta,
                       InterferenceCombining combining = InterferenceCombining::power_sum);

/// Draws trials for one configuration. Holds the correlation factor so that
/// repeated runs skip the eigendecomposition.
class Simulator {
public:
    explicit Simulator(SystemConfig config);
    /// Reuses a correlation matrix already built for config.grid.
    Simulator(SystemConfig config, CorrelationMatrix corr);

    /// One trial through the reduced path: only the projections of each
    /// interferer onto the activated port sets are formed. Consumes the random
    /// stream in the same order as draw_realization. Trials whose desired
    /// channel activates no port on a branch are redrawn from the same stream.
    TrialResult trial(const SeedSpec& seed, std::uint64_t index, int* redraws = nullptr) const;

    /// Sample variance target: the per-interferer activated sum of real parts,
    /// sum over K_I of Re g, for one trial (first interferer).
    double interference_sum(const SeedSpec& seed, std::uint64_t index) const;

    const SystemConfig& config() const noexcept { return config_; }
    const CorrelationMatrix& correlation() const noexcept { return corr_; }

private:
    SystemConfig config_;
    CorrelationMatrix corr_;
    Eigen::MatrixXd factor_t_;  // factor rows stored contiguously
};

struct SirSamples {
    std::vector<double> sir;
    std::vector<double> sir_i;
    std::vector<double> sir_q;
    std::vector<int> k_i_size;
    int excluded = 0;
    int redrawn = 0;
};

/// Runs `trials` trials (in parallel when OpenMP is available); the output is
/// in trial order and independent of the thread count.
SirSamples simulate_sir(const Simulator& sim, int trials, const SeedSpec& seed);
SirSamples simulate_sir(const SystemConfig& config, int trials, const SeedSpec& seed);

struct McMetrics {
    MeanEstimate er;                 ///< U * mean log2(1 + sir)
    std::vector<double> gamma_grid;
    std::vector<MeanEstimate> op;    ///< Pr{log2(1 + sir) < gamma}
    double sir_median = 0.0;
    int trials = 0;
    int excluded = 0;
    int redrawn = 0;
};

McMetrics mc_metrics(const SirSamples& samples, int users, std::span<const double> gamma_grid);
McMetrics mc_metrics(const SystemConfig& config, int trials, const SeedSpec& seed,
                     std::span<const double> gamma_grid);

/// Pr{log2(1 + sir_B) - log2(1 + sir_E) < rs} from paired trials.
MeanEstimate mc_sop(const SirSamples& bob, const SirSamples& eve, double rs);
MeanEstimate mc_sop(const SystemConfig& bob, const SystemConfig& eve, double rs, int trials, const SeedSpec& seed);

/// Pr{sir_B < 2^rs sir_E} from paired trials.
MeanEstimate mc_sop_lower(const SirSamples& bob, const SirSamples& eve, double rs);

}  // namespace cuma
