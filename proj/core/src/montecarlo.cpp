#include "cuma/montecarlo.hpp"

#include "cuma/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cuma {

namespace {

using Engine = std::mt19937_64;

Eigen::VectorXd normals(Engine& eng, Eigen::Index n) {
    std::normal_distribution<double> nd;
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v[i] = nd(eng);
    }
    return v;
}

Eigen::VectorXcd complex_channel(const Eigen::MatrixXd& f, double amp, Engine& eng) {
    const Eigen::VectorXd x = normals(eng, f.cols());
    const Eigen::VectorXd y = normals(eng, f.cols());
    Eigen::VectorXcd g(f.rows());
    g.real() = amp * (f * x);
    g.imag() = amp * (f * y);
    return g;
}

MeanEstimate proportion(double hits, double n) {
    const double p = hits / n;
    return {p, std::sqrt(std::max(p * (1.0 - p), 0.0) / n)};
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t SeedSpec::trial_seed(std::uint64_t trial) const noexcept { return splitmix64(master_seed ^ trial); }

SeedSpec SeedSpec::derive(std::string_view tag) const noexcept {
    // FNV-1a over the tag, folded into the master seed.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return {splitmix64(master_seed ^ splitmix64(h))};
}

void SystemConfig::validate() const {
    make_grid(grid.n1, grid.n2, grid.w1, grid.w2);
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw DomainError("SystemConfig: omega must be positive");
    }
    if (users < 2) {
        throw DomainError("SystemConfig: need at least two users");
    }
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw DomainError("SystemConfig: delta must lie in (0, 1]");
    }
    if (!(psd_tol >= 0.0)) {
        throw DomainError("SystemConfig: psd_tol must be nonnegative");
    }
}

ChannelRealization draw_realization(const CorrelationMatrix& corr, double omega, int interferers,
                                    const SeedSpec& seed, std::uint64_t trial) {
    if (interferers < 1) {
        throw DomainError("draw_realization: need at least one interferer");
    }
    if (!(omega > 0.0)) {
        throw DomainError("draw_realization: omega must be positive");
    }
    Engine eng(seed.trial_seed(trial));
    const double amp = std::sqrt(0.5 * omega);
    ChannelRealization r;
    r.desired = complex_channel(corr.factor(), amp, eng);
    r.interferers.reserve(static_cast<std::size_t>(interferers));
    for (int u = 0; u < interferers; ++u) {
        r.interferers.push_back(complex_channel(corr.factor(), amp, eng));
    }
    return r;
}

PortSelection select_ports(const Eigen::VectorXcd& desired) {
    if (desired.size() == 0) {
        throw DomainError("select_ports: empty channel vector");
    }
    PortSelection s;
    for (Eigen::Index k = 0; k < desired.size(); ++k) {
        if (desired[k].real() > 0.0) {
            s.k_i.push_back(static_cast<int>(k));
        }
        if (desired[k].imag() > 0.0) {
            s.k_q.push_back(static_cast<int>(k));
        }
    }
    return s;
}

TrialResult sir_sample(const ChannelRealization& real, double delta, InterferenceCombining combining) {
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw DomainError("sir_sample: delta must lie in (0, 1]");
    }
    if (real.interferers.empty()) {
        throw DomainError("sir_sample: no interferers");
    }
    const PortSelection sel = select_ports(real.desired);
    auto branch = [&](const std::vector<int>& ports, bool in_phase, bool& ok) {
        auto part = [&](const Eigen::VectorXcd& g) {
            double s = 0.0;
            for (const int k : ports) {
                s += in_phase ? g[k].real() : g[k].imag();
            }
            return s;
        };
        const double nu = std::pow(part(real.desired), 2);
        double xi = 0.0;
        double coherent = 0.0;
        for (const auto& g : real.interferers) {
            const double p = part(g);
            xi += p * p;
            coherent += p;
        }
        if (combining == InterferenceCombining::coherent) {
            xi = coherent * coherent;
        }
        if (xi == 0.0) {
            ok = false;
            return 0.0;
        }
        return nu / (delta * xi);
    };
    TrialResult t;
    t.k_i_size = static_cast<int>(sel.k_i.size());
    t.k_q_size = static_cast<int>(sel.k_q.size());
    t.sir_i = branch(sel.k_i, true, t.valid);
    t.sir_q = branch(sel.k_q, false, t.valid);
    t.sir = t.sir_i + t.sir_q;
    return t;
}

Simulator::Simulator(SystemConfig config)
    : config_((config.validate(), config)),
      corr_(CorrelationMatrix::from_grid(config.grid, config.psd_tol)),
      factor_t_(corr_.factor().transpose()) {}

Simulator::Simulator(SystemConfig config, CorrelationMatrix corr)
    : config_((config.validate(), config)), corr_(std::move(corr)), factor_t_(corr_.factor().transpose()) {
    if (corr_.dim() != config_.grid.size()) {
        throw DomainError("Simulator: correlation matrix does not match the grid");
    }
}

TrialResult Simulator::trial(const SeedSpec& seed, std::uint64_t index, int* redraws) const {
    const Eigen::MatrixXd& f = corr_.factor();
    const Eigen::MatrixXd& ft = factor_t_;
    const Eigen::Index n = f.rows();
    const Eigen::Index r = f.cols();
    const double amp = std::sqrt(0.5 * config_.omega);
    Engine eng(seed.trial_seed(index));
    int attempts = 0;
    for (;;) {
        const Eigen::VectorXd x = normals(eng, r);
        const Eigen::VectorXd y = normals(eng, r);
        const Eigen::VectorXd re = amp * (f * x);
        const Eigen::VectorXd im = amp * (f * y);
        Eigen::VectorXd w_i = Eigen::VectorXd::Zero(r);
        Eigen::VectorXd w_q = Eigen::VectorXd::Zero(r);
        double sum_i = 0.0;
        double sum_q = 0.0;
        int k_i = 0;
        int k_q = 0;
        for (Eigen::Index k = 0; k < n; ++k) {
            if (re[k] > 0.0) {
                sum_i += re[k];
                w_i += ft.col(k);
                ++k_i;
            }
            if (im[k] > 0.0) {
                sum_q += im[k];
                w_q += ft.col(k);
                ++k_q;
            }
        }
        w_i *= amp;
        w_q *= amp;
        double xi_i = 0.0;
        double xi_q = 0.0;
        double coh_i = 0.0;
        double coh_q = 0.0;
        for (int u = 0; u < config_.interferers(); ++u) {
            const Eigen::VectorXd xu = normals(eng, r);
            const Eigen::VectorXd yu = normals(eng, r);
            const double a = w_i.dot(xu);
            const double b = w_q.dot(yu);
            xi_i += a * a;
            xi_q += b * b;
            coh_i += a;
            coh_q += b;
        }
        if (k_i == 0 || k_q == 0) {
            ++attempts;
            continue;
        }
        if (redraws != nullptr) {
            *redraws = attempts;
        }
        if (config_.combining == InterferenceCombining::coherent) {
            xi_i = coh_i * coh_i;
            xi_q = coh_q * coh_q;
        }
        TrialResult t;
        t.k_i_size = k_i;
        t.k_q_size = k_q;
        if (xi_i == 0.0 || xi_q == 0.0) {
            t.valid = false;
            return t;
        }
        t.sir_i = sum_i * sum_i / (config_.delta * xi_i);
        t.sir_q = sum_q * sum_q / (config_.delta * xi_q);
        t.sir = t.sir_i + t.sir_q;
        return t;
    }
}

double Simulator::interference_sum(const SeedSpec& seed, std::uint64_t index) const {
    const ChannelRealization real = draw_realization(corr_, config_.omega, 1, seed, index);
    const PortSelection sel = select_ports(real.desired);
    double s = 0.0;
    for (const int k : sel.k_i) {
        s += real.interferers.front()[k].real();
    }
    return s;
}

SirSamples simulate_sir(const Simulator& sim, int trials, const SeedSpec& seed) {
    if (trials < 1) {
        throw DomainError("simulate_sir: trials must be positive");
    }
    std::vector<TrialResult> results(static_cast<std::size_t>(trials));
    std::vector<int> redraws(static_cast<std::size_t>(trials), 0);
#pragma omp parallel for schedule(static)
    for (int t = 0; t < trials; ++t) {
        results[t] = sim.trial(seed, static_cast<std::uint64_t>(t), &redraws[t]);
    }
    SirSamples out;
    out.sir.reserve(results.size());
    out.sir_i.reserve(results.size());
    out.sir_q.reserve(results.size());
    out.k_i_size.reserve(results.size());
    for (std::size_t t = 0; t < results.size(); ++t) {
        out.redrawn += redraws[t];
        if (!results[t].valid) {
            ++out.excluded;
            continue;
        }
        out.sir.push_back(results[t].sir);
        out.sir_i.push_back(results[t].sir_i);
        out.sir_q.push_back(results[t].sir_q);
        out.k_i_size.push_back(results[t].k_i_size);
    }
    if (out.sir.size() < 2) {
        throw NumericalError("simulate_sir: fewer than two valid trials");
    }
    return out;
}

SirSamples simulate_sir(const SystemConfig& config, int trials, const SeedSpec& seed) {
    return simulate_sir(Simulator(config), trials, seed);
}

McMetrics mc_metrics(const SirSamples& samples, int users, std::span<const double> gamma_grid) {
    if (users < 2) {
        throw DomainError("mc_metrics: need at least two users");
    }
    const std::size_t n = samples.sir.size();
    std::vector<double> rate(n);
    for (std::size_t i = 0; i < n; ++i) {
        rate[i] = std::log2(1.0 + samples.sir[i]);
    }
    McMetrics m;
    m.trials = static_cast<int>(n + samples.excluded);
    m.excluded = samples.excluded;
    m.redrawn = samples.redrawn;
    const MeanEstimate r = mean_and_stderr(rate);
    m.er = {users * r.mean, users * r.std_error};
    m.gamma_grid.assign(gamma_grid.begin(), gamma_grid.end());
    for (const double g : gamma_grid) {
        const auto hits = std::count_if(rate.begin(), rate.end(), [g](double v) { return v < g; });
        m.op.push_back(proportion(static_cast<double>(hits), static_cast<double>(n)));
    }
    m.sir_median = EmpiricalCdf(samples.sir).quantile(0.5);
    return m;
}

McMetrics mc_metrics(const SystemConfig& config, int trials, const SeedSpec& seed,
                     std::span<const double> gamma_grid) {
    if (trials < 1000) {
        throw DomainError("mc_metrics: need at least 1000 trials");
    }
    return mc_metrics(simulate_sir(config, trials, seed), config.users, gamma_grid);
}

MeanEstimate mc_sop(const SirSamples& bob, const SirSamples& eve, double rs) {
    if (!(rs >= 0.0)) {
        throw DomainError("mc_sop: rs must be nonnegative");
    }
    const std::size_t n = std::min(bob.sir.size(), eve.sir.size());
    double hits = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::log2(1.0 + bob.sir[i]) - std::log2(1.0 + eve.sir[i]) < rs) {
            hits += 1.0;
        }
    }
    return proportion(hits, static_cast<double>(n));
}

MeanEstimate mc_sop(const SystemConfig& bob, const SystemConfig& eve, double rs, int trials, const SeedSpec& seed) {
    if (trials < 1000) {
        throw DomainError("mc_sop: need at least 1000 trials");
    }
    return mc_sop(simulate_sir(bob, trials, seed.derive("bob")), simulate_sir(eve, trials, seed.derive("eve")), rs);
}

MeanEstimate mc_sop_lower(const SirSamples& bob, const SirSamples& eve, double rs) {
    if (!(rs >= 0.0)) {
        throw DomainError("mc_sop_lower: rs must be nonnegative");
    }
    const double tau = std::exp2(rs);
    const std::size_t n = std::min(bob.sir.size(), eve.sir.size());
    double hits = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (bob.sir[i] < tau * eve.sir[i]) {
            hits += 1.0;
        }
    }
    return proportion(hits, static_cast<double>(n));
}

}  // namespace cuma
