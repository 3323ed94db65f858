#pragma once

#include "cuma/analytic.hpp"

namespace cuma {

/// Gamma(alpha, beta) law in shape/scale form.
struct GammaFit {
    double alpha = 0.5;
    double beta = 1.0;
};

/// Small-z behaviour of the in-phase density, f(z) ~ a0 z^{b0}, and of the
/// two-branch sum, f(z) ~ c0 z^{d0 - 2}.
struct AsymptoteCoeffs {
    double a0 = 0.0;
    double b0 = -0.5;
    double c0 = 0.0;
    double d0 = 2.0;
};

/// a0 = exp(-mu^2 / (2 sigma1^2)) I sigma2 sqrt(delta) / (2 sigma1 Gamma(I/2)), computed in
/// log form; c0 = 1/beta and d0 = 2 for two i.i.d. half-shape branches.
AsymptoteCoeffs asymptote_coeffs(const ChannelStats& stats);

/// Scale of the Gamma(1/2, beta) in-phase fit. Evaluated in log form, so it
/// stays finite for large interferer counts.
double beta_I(const ChannelStats& stats);

/// Gamma(1/2, beta_I) for one branch.
GammaFit inphase_fit(const ChannelStats& stats);

/// Gamma(1, beta_I) for the I + Q sum.
GammaFit total_fit(const ChannelStats& stats);

/// z^{-1/2} e^{-z/beta} / sqrt(pi beta). Requires z > 0.
double approx_pdf_zI(double z, double beta);
/// erf(sqrt(z / beta)).
double approx_cdf_zI(double z, double beta);

/// e^{-z/beta} / beta. Requires z > 0.
double approx_pdf_z(double z, double beta);
/// 1 - e^{-z/beta}.
double approx_cdf_z(double z, double beta);

/// U e^{x} Gamma(0, x) / ln 2 with x = sigma2^2 / beta.
double approx_er(int users, double beta, double sigma2_sq);

/// 1 - exp(-(2^gamma_th - 1) sigma2^2 / beta).
double approx_op(double gamma_th, double beta, double sigma2_sq);

/// 1 - beta_b / (tau beta_e + beta_b), tau = 2^rs.
double sop_lower_closed(double beta_b, double beta_e, double rs);

/// Exponential SIR law with scale beta, for plugging into the rate integrals.
class ExponentialSir final : public SirDistribution {
public:
    explicit ExponentialSir(double beta);
    double pdf(double z) const override;
    double cdf(double z) const override;
    double typical_scale() const override { return beta_; }
    double beta() const noexcept { return beta_; }

private:
    double beta_;
};

}  // namespace cuma
