#include "cuma/approx.hpp"

#include "cuma/error.hpp"
#include "cuma/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cuma {

namespace {

constexpr double kPi = std::numbers::pi;

void check_beta(double beta, const char* who) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw DomainError(std::string(who) + ": beta must be positive and finite");
    }
}

double log_a0(const ChannelStats& s) {
    const double i = s.interferers;
    return -s.mu * s.mu / (2.0 * s.sigma1_sq) + std::log(i) + 0.5 * std::log(s.sigma2_sq) +
           0.5 * std::log(s.delta) - std::log(2.0) - 0.5 * std::log(s.sigma1_sq) - specfun::log_gamma(0.5 * i);
}

}  // namespace

AsymptoteCoeffs asymptote_coeffs(const ChannelStats& stats) {
    AsymptoteCoeffs c;
    c.a0 = std::exp(log_a0(stats));
    if (!(c.a0 > 0.0)) {
        throw NumericalError("asymptote_coeffs: a0 underflows");
    }
    c.b0 = -0.5;
    c.c0 = 1.0 / beta_I(stats);
    c.d0 = 2.0;
    return c;
}

double beta_I(const ChannelStats& stats) {
    // beta = (2 sigma1 Gamma(I/2) / (I sigma2 sqrt(delta pi) exp(-mu^2 / (2 sigma1^2))))^2
    const double i = stats.interferers;
    const double log_inner = std::log(2.0) + 0.5 * std::log(stats.sigma1_sq) + specfun::log_gamma(0.5 * i) -
                             std::log(i) - 0.5 * std::log(stats.sigma2_sq) -
                             0.5 * std::log(stats.delta * kPi) + stats.mu * stats.mu / (2.0 * stats.sigma1_sq);
    const double beta = std::exp(2.0 * log_inner);
    if (!std::isfinite(beta)) {
        throw NumericalError("beta_I: overflow");
    }
    return beta;
}

GammaFit inphase_fit(const ChannelStats& stats) { return {0.5, beta_I(stats)}; }

GammaFit total_fit(const ChannelStats& stats) {
    const AsymptoteCoeffs c = asymptote_coeffs(stats);
    return {c.d0 - 1.0, beta_I(stats)};
}

double approx_pdf_zI(double z, double beta) {
    check_beta(beta, "approx_pdf_zI");
    if (!(z > 0.0)) {
        throw DomainError("approx_pdf_zI: z must be positive");
    }
    return std::exp(-z / beta) / std::sqrt(kPi * beta * z);
}

double approx_cdf_zI(double z, double beta) {
    check_beta(beta, "approx_cdf_zI");
    if (z <= 0.0) {
        return 0.0;
    }
    return std::erf(std::sqrt(z / beta));
}

double approx_pdf_z(double z, double beta) {
    check_beta(beta, "approx_pdf_z");
    if (!(z > 0.0)) {
        throw DomainError("approx_pdf_z: z must be positive");
    }
    return std::exp(-z / beta) / beta;
}

double approx_cdf_z(double z, double beta) {
    check_beta(beta, "approx_cdf_z");
    if (z <= 0.0) {
        return 0.0;
    }
    return -std::expm1(-z / beta);
}

double approx_er(int users, double beta, double sigma2_sq) {
    check_beta(beta, "approx_er");
    if (users < 2) {
        throw DomainError("approx_er: need at least two users");
    }
    if (!(sigma2_sq > 0.0)) {
        throw DomainError("approx_er: sigma2_sq must be positive");
    }
    return users * specfun::scaled_exp_integral_e1(sigma2_sq / beta) / std::numbers::ln2;
}

double approx_op(double gamma_th, double beta, double sigma2_sq) {
    check_beta(beta, "approx_op");
    if (!(gamma_th > 0.0)) {
        throw DomainError("approx_op: gamma_th must be positive");
    }
    if (!(sigma2_sq > 0.0)) {
        throw DomainError("approx_op: sigma2_sq must be positive");
    }
    const double z_th = std::expm1(gamma_th * std::numbers::ln2) * sigma2_sq;
    return approx_cdf_z(z_th, beta);
}

double sop_lower_closed(double beta_b, double beta_e, double rs) {
    check_beta(beta_b, "sop_lower_closed");
    check_beta(beta_e, "sop_lower_closed");
    if (!(rs >= 0.0) || !std::isfinite(rs)) {
        throw DomainError("sop_lower_closed: rs must be finite and nonnegative");
    }
    const double tau = std::exp2(rs);
    return tau * beta_e / (tau * beta_e + beta_b);
}

ExponentialSir::ExponentialSir(double beta) : beta_(beta) { check_beta(beta, "ExponentialSir"); }

double ExponentialSir::pdf(double z) const { return z < 0.0 ? 0.0 : std::exp(-z / beta_) / beta_; }

double ExponentialSir::cdf(double z) const { return approx_cdf_z(z, beta_); }

}  // namespace cuma
