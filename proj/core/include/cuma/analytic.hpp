#pragma once

#include "cuma/geometry.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace cuma {

/// Which ports enter the pairwise correlation sums behind sigma1^2 and sigma2^2.
enum class PairingMode {
    all_ports,   ///< every port of the grid (nbar = N)
    first_nbar,  ///< ports 1..nbar in linear order
    stride,      ///< nbar ports spaced floor(N / nbar) apart
};

struct PairingPolicy {
    PairingMode mode = PairingMode::all_ports;
};

/// 0-based linear indices of the ports a policy selects. nbar = 0 means "all".
std::vector<int> selected_ports(const PortGrid& grid, int nbar, PairingPolicy policy);

/// Per-UE parameters of the exact SIR law.
struct ChannelStats {
    double omega = 1.0;       ///< average channel power
    int nbar = 0;             ///< effective port count
    double mu = 0.0;          ///< (nbar / 2) sqrt(omega / pi)
    double sigma1_sq = 0.0;   ///< variance of the coherent desired sum
    double sigma2_sq = 0.0;   ///< variance of one interferer's activated sum
    int interferers = 0;      ///< U - 1
    double delta = 1.0;       ///< interference-cancellation factor in (0, 1]

    /// Validates the invariants and fills in mu.
    static ChannelStats make(double omega, int nbar, double sigma1_sq, double sigma2_sq, int interferers,
                             double delta);
};

/// Truncated-Gaussian moment W(a, b, c) = int_0^inf x^{2c+1} e^{-b x^2} erfc(a x / sqrt 2) dx,
/// in its hypergeometric closed form. Requires b > 0 and c > -1.
double w_func(double a, double b, double c);

/// cov(max(0, X), max(0, Y)) for X, Y ~ N(0, omega/2) with correlation rho.
/// rho = +-1 return the analytic limits.
double cov_pair(double rho, double omega);

struct SigmaSums {
    double sigma1_sq = 0.0;
    double sigma2_sq = 0.0;
    int nbar = 0;
};

/// sigma2^2 = (omega/4)(nbar + sum rho) and
/// sigma1^2 = nbar omega/4 (1 - 1/pi) + 2 sum cov over the policy's port pairs.
SigmaSums sigma_sums(const PortGrid& grid, double omega, int nbar, PairingPolicy policy = {});

/// Convenience: statistics for a grid with U users (interferers = U - 1).
ChannelStats channel_stats(const PortGrid& grid, double omega, int users, double delta,
                           PairingPolicy policy = {}, int nbar = 0);

/// Exact density of the in-phase SIR, the law of X^2 / (delta sigma2^2 V) with
/// X ~ N(mu, sigma1^2) and V ~ chi^2 with `interferers` degrees of freedom,
/// written through the Whittaker M function. Requires z > 0.
double exact_pdf_zI(double z, const ChannelStats& stats);

/// CDF of the in-phase SIR by quadrature of exact_pdf_zI.
double exact_cdf_zI(double z, const ChannelStats& stats, double quad_tol = 1e-8);

/// Density of Z = Z_I + Z_Q (two i.i.d. branches) by numerical convolution.
double exact_pdf_z(double z, const ChannelStats& stats, double quad_tol = 1e-6);

/// CDF of Z = Z_I + Z_Q.
double exact_cdf_z(double z, const ChannelStats& stats, double quad_tol = 1e-6);

/// Distribution of a per-user SIR variable as used by the rate and secrecy metrics.
class SirDistribution {
public:
    virtual ~SirDistribution() = default;

    virtual double pdf(double z) const = 0;
    virtual double cdf(double z) const = 0;

    /// E[g(Z)]. The default integrates g against pdf over (0, inf).
    virtual double expect(const std::function<double(double)>& g, double quad_tol) const;

    /// Characteristic magnitude of Z, used to scale the half-line map.
    virtual double typical_scale() const { return 1.0; }
};

/// The exact two-branch SIR law. Builds a tabulated in-phase CDF once so that
/// nested integrals cost a single level of quadrature each.
class ExactSir final : public SirDistribution {
public:
    explicit ExactSir(const ChannelStats& stats, double quad_tol = 1e-6);
    ~ExactSir() override;
    ExactSir(ExactSir&&) noexcept;
    ExactSir& operator=(ExactSir&&) noexcept;

    double pdf(double z) const override;
    double cdf(double z) const override;
    double typical_scale() const override;

    double inphase_pdf(double z) const;
    double inphase_cdf(double z) const;

    const ChannelStats& stats() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// All mass at z = 0; only used to exercise the rate integrals.
class PointMassSir final : public SirDistribution {
public:
    double pdf(double z) const override;
    double cdf(double z) const override;
    double expect(const std::function<double(double)>& g, double quad_tol) const override;
};

/// U * E[log2(1 + Z / sigma2^2)].
double ergodic_rate(int users, double sigma2_sq, const SirDistribution& law, double quad_tol);

/// Pr{C_B - C_E < rs} = int F_B(tau (1 + z) - 1) f_E(z) dz, tau = 2^rs.
double secrecy_outage(const SirDistribution& bob, const SirDistribution& eve, double rs, double quad_tol);

/// Pr{Z_B < tau Z_E}.
double secrecy_outage_lower(const SirDistribution& bob, const SirDistribution& eve, double rs,
                            double quad_tol);

/// Ergodic rate summed over `users` with the exact SIR law.
double exact_er(int users, const ChannelStats& stats, double quad_tol = 1e-6);

/// F_Z(z_th) with z_th = (2^gamma_th - 1) sigma2^2.
double exact_op(double gamma_th, const ChannelStats& stats, double quad_tol = 1e-6);

/// Exact secrecy outage probability with exact Bob and Eve laws.
double exact_sop(const ChannelStats& stats_b, const ChannelStats& stats_e, double rs, double quad_tol = 1e-6);

/// Exact lower bound Pr{Z_B < tau Z_E}.
double sop_lower_numeric(const ChannelStats& stats_b, const ChannelStats& stats_e, double rs,
                         double quad_tol = 1e-6);

}  // namespace cuma
