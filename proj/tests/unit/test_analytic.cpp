#include "cuma/analytic.hpp"
#include "cuma/approx.hpp"
#include "cuma/error.hpp"
#include "cuma/geometry.hpp"
#include "cuma/quadrature.hpp"
#include "cuma/specfun.hpp"
#include "cuma/statistics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace {

using namespace cuma;

void expect_rel(double got, double want, double tol) {
    EXPECT_LE(std::abs(got - want), tol * std::abs(want)) << "got " << got << " want " << want;
}

ChannelStats nc_stats(int users, double delta = 1.0) {
    return channel_stats(find_preset("6GHz-NC").grid, 1.0, users, delta);
}

// P(X^2 <= c z V) with X ~ N(mu, s1^2), V ~ chi^2_I, integrated over V.
double cdf_zI_by_chi2_mixing(double z, const ChannelStats& st) {
    const double c = st.delta * st.sigma2_sq;
    const double s1 = std::sqrt(st.sigma1_sq);
    const double k = 0.5 * st.interferers;
    const double log_norm = -k * std::log(2.0) - specfun::log_gamma(k);
    const auto phi = [](double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); };
    const auto g = [&](double v) {
        if (v <= 0.0) {
            return 0.0;
        }
        const double r = std::sqrt(c * z * v);
        const double p = phi((r - st.mu) / s1) - phi((-r - st.mu) / s1);
        return p * std::exp(log_norm + (k - 1.0) * std::log(v) - 0.5 * v);
    };
    quad::Options o;
    o.rel_tol = 1e-12;
    o.abs_tol = 1e-16;
    return quad::integrate_half_line(g, o, 2.0 * k);
}

TEST(WFunc, GoldenAndQuadrature) {
    expect_rel(w_func(-1.2, 1.0, 0.5), 0.78077225794661992271, 1e-12);
    for (const auto& [a, b, c] : {std::tuple{0.7, 2.0, 0.5}, std::tuple{-0.4, 0.6, 0.0}, std::tuple{1.9, 1.0, -0.5},
                                  std::tuple{-3.0, 0.8, 1.5}}) {
        quad::Options o;
        o.rel_tol = 1e-12;
        const double direct = quad::integrate_half_line_sqrt(
            [&](double x) {
                return std::pow(x, 2.0 * c + 1.0) * std::exp(-b * x * x) * std::erfc(a * x / std::numbers::sqrt2);
            },
            o);
        expect_rel(w_func(a, b, c), direct, 1e-9);
    }
    EXPECT_THROW(w_func(1.0, 0.0, 0.5), DomainError);
    EXPECT_THROW(w_func(1.0, 1.0, -1.0), DomainError);
}

TEST(Covariance, Golden) {
    expect_rel(cov_pair(0.5, 1.0), 0.072671973715109671638, 1e-12);
    expect_rel(cov_pair(-0.5, 1.0), -0.052328026284890328362, 1e-12);
    expect_rel(cov_pair(0.999, 1.0), 0.17017490111450988276, 1e-11);
    expect_rel(cov_pair(0.5, 2.0), 0.14534394743021934328, 1e-12);
    expect_rel(cov_pair(0.9836316430834658, 1.0), 0.16648768454581027723, 1e-12);
    expect_rel(cov_pair(-1.0, 1.0), -0.079577471545947667884, 1e-14);
    expect_rel(cov_pair(1.0, 1.0), 0.17042252845405233212, 1e-14);
    EXPECT_EQ(cov_pair(0.0, 1.0), 0.0);
    EXPECT_THROW(cov_pair(1.0001, 1.0), DomainError);
}

TEST(Covariance, ContinuousAtTheLimitsAndMonotone) {
    EXPECT_NEAR(cov_pair(1.0 - 1e-9, 1.0), cov_pair(1.0, 1.0), 1e-6);
    EXPECT_NEAR(cov_pair(-1.0 + 1e-9, 1.0), cov_pair(-1.0, 1.0), 1e-6);
    double prev = cov_pair(-1.0, 1.0);
    for (double r = -0.95; r <= 1.0; r += 0.05) {
        const double v = cov_pair(r, 1.0);
        EXPECT_GT(v, prev) << r;
        prev = v;
    }
}

TEST(Covariance, AgreesWithSampling) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n01;
    const double rho = 0.3;
    const int n = 400000;
    std::vector<double> prod(n);
    double sx = 0.0;
    double sy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = n01(rng);
        const double b = rho * a + std::sqrt(1.0 - rho * rho) * n01(rng);
        const double x = std::max(0.0, a / std::numbers::sqrt2);
        const double y = std::max(0.0, b / std::numbers::sqrt2);
        prod[i] = x * y;
        sx += x;
        sy += y;
    }
    const MeanEstimate m = mean_and_stderr(prod);
    const double cov = m.mean - (sx / n) * (sy / n);
    EXPECT_NEAR(cov, cov_pair(rho, 1.0), 5.0 * m.std_error);
}

TEST(Covariance, SignFollowsCorrelation) {
    for (double r = -0.9; r <= 0.9 + 1e-12; r += 0.05) {
        if (std::abs(r) < 1e-9) {
            continue;
        }
        EXPECT_EQ(std::signbit(cov_pair(r, 1.0)), std::signbit(r)) << r;
    }
}

TEST(SigmaSums, NoPairsAndIndependentPorts) {
    const PortGrid g = make_grid(7, 4, 3.0, 1.5);
    const SigmaSums one = sigma_sums(g, 2.0, 1, {PairingMode::first_nbar});
    EXPECT_EQ(one.nbar, 1);
    EXPECT_DOUBLE_EQ(one.sigma2_sq, 0.5);
    EXPECT_DOUBLE_EQ(one.sigma1_sq, 0.5 * (1.0 - 1.0 / std::numbers::pi));
    // Ports 1 and 2 sit exactly half a wavelength apart: a null of the correlation.
    const SigmaSums two = sigma_sums(g, 1.0, 2, {PairingMode::first_nbar});
    EXPECT_NEAR(two.sigma2_sq, 0.5, 1e-15);
    EXPECT_NEAR(two.sigma1_sq, 0.5 * (1.0 - 1.0 / std::numbers::pi), 1e-15);
}

TEST(SigmaSums, GoldenForSmallestGrid) {
    const SigmaSums s = sigma_sums(find_preset("6GHz-NC").grid, 1.0, 0);
    EXPECT_EQ(s.nbar, 28);
    expect_rel(s.sigma1_sq, 3.8240775604111875572, 1e-13);
    expect_rel(s.sigma2_sq, 5.8149229663774103321, 1e-13);
    const ChannelStats st = nc_stats(20);
    expect_rel(st.mu, 7.8986541696685880173, 1e-14);
    EXPECT_EQ(st.interferers, 19);
}

TEST(SigmaSums, OffsetCountingMatchesPairLoop) {
    for (const char* name : {"6GHz-NC", "6GHz-C", "26GHz-NC"}) {
        const PortGrid g = find_preset(name).grid;
        const SigmaSums fast = sigma_sums(g, 1.3, 0);
        const SigmaSums loop = sigma_sums(g, 1.3, g.size(), {PairingMode::stride});
        expect_rel(fast.sigma1_sq, loop.sigma1_sq, 1e-11);
        expect_rel(fast.sigma2_sq, loop.sigma2_sq, 1e-11);
    }
}

TEST(SigmaSums, BruteForceDefinition) {
    const PortGrid g = make_grid(5, 3, 1.1, 0.7);
    double s_rho = 0.0;
    double s_cov = 0.0;
    const int n = g.size();
    for (int k = 1; k <= n; ++k) {
        for (int m = k + 1; m <= n; ++m) {
            const double r = correlation(k, m, g);
            s_rho += r;
            s_cov += cov_pair(r, 2.0);
        }
    }
    const SigmaSums s = sigma_sums(g, 2.0, 0);
    expect_rel(s.sigma2_sq, 0.5 * (n + s_rho), 1e-12);
    expect_rel(s.sigma1_sq, n * 0.5 * (1.0 - 1.0 / std::numbers::pi) + 2.0 * s_cov, 1e-12);
}

TEST(Pairing, PolicySelections) {
    const PortGrid g = make_grid(10, 2, 2.0, 0.5);
    EXPECT_EQ(selected_ports(g, 0, {}).size(), 20u);
    EXPECT_EQ(selected_ports(g, 3, {PairingMode::first_nbar}), (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(selected_ports(g, 4, {PairingMode::stride}), (std::vector<int>{0, 5, 10, 15}));
    EXPECT_THROW(selected_ports(g, 21, {PairingMode::first_nbar}), DomainError);
    EXPECT_THROW(selected_ports(g, 5, {}), DomainError);
}

TEST(ChannelStatsMake, Validation) {
    EXPECT_THROW(ChannelStats::make(1.0, 4, 1.0, 1.0, 0, 1.0), DomainError);
    EXPECT_THROW(ChannelStats::make(1.0, 4, 1.0, 1.0, 3, 0.0), DomainError);
    EXPECT_THROW(ChannelStats::make(1.0, 4, 1.0, 1.0, 3, 1.5), DomainError);
    EXPECT_THROW(ChannelStats::make(1.0, 4, -1.0, 1.0, 3, 1.0), DomainError);
    EXPECT_THROW(channel_stats(find_preset("6GHz-NC").grid, 1.0, 1, 1.0), DomainError);
    const ChannelStats s = ChannelStats::make(std::numbers::pi, 4, 1.0, 1.0, 3, 1.0);
    EXPECT_DOUBLE_EQ(s.mu, 2.0);
}

TEST(InphaseDensity, Golden) {
    const ChannelStats u10 = nc_stats(10);
    expect_rel(exact_pdf_zI(u10.sigma2_sq, u10), 0.0091464612624473875622, 1e-11);
    expect_rel(exact_pdf_zI(0.4, u10), 0.35399840697435313113, 1e-11);
    expect_rel(std::sqrt(1e-14) * exact_pdf_zI(1e-14, u10), 0.00041143877459456312312, 1e-6);
    const ChannelStats u20 = nc_stats(20);
    expect_rel(exact_pdf_zI(u20.sigma2_sq, u20), 0.000020340735907566328144, 1e-11);
    expect_rel(exact_pdf_zI(0.4, u20), 1.2752107204554968649, 1e-11);
    expect_rel(std::sqrt(1e-14) * exact_pdf_zI(1e-14, u20), 0.00060658024193691124223, 1e-6);
    EXPECT_THROW(exact_pdf_zI(0.0, u10), DomainError);
}

TEST(InphaseDensity, CdfMatchesChiSquareMixing) {
    for (const int users : {4, 10, 20}) {
        const ChannelStats st = nc_stats(users, 0.7);
        for (const double z : {1e-3, 0.05, 0.3, 1.0, 4.0}) {
            const double want = cdf_zI_by_chi2_mixing(z, st);
            EXPECT_NEAR(exact_cdf_zI(z, st, 1e-10), want, 1e-9 + 1e-8 * want) << users << " " << z;
        }
    }
}

TEST(InphaseDensity, NormalisedAcrossGrids) {
    for (const char* name : {"6GHz-NC", "26GHz-NC", "40GHz-C"}) {
        const ChannelStats st = channel_stats(find_preset(name).grid, 1.0, 12, 1.0);
        const ExactSir law(st, 1e-8);
        quad::Options o;
        o.rel_tol = 1e-10;
        const double total =
            quad::integrate_half_line_sqrt([&](double z) { return law.inphase_pdf(z); }, o, law.typical_scale());
        EXPECT_NEAR(total, 1.0, 1e-8) << name;
    }
}

TEST(ExactSirLaw, TabulatedCdfMatchesDirectQuadrature) {
    const ChannelStats st = nc_stats(20);
    const ExactSir law(st, 1e-8);
    for (const double z : {1e-4, 0.01, 0.2, 0.9, 3.0, 25.0}) {
        EXPECT_NEAR(law.inphase_cdf(z), exact_cdf_zI(z, st, 1e-10), 1e-9) << z;
    }
    EXPECT_EQ(law.inphase_cdf(0.0), 0.0);
}

TEST(ExactSirLaw, ConvolutionMatchesFineTrapezoid) {
    const ChannelStats st = nc_stats(10);
    const ExactSir law(st, 1e-8);
    for (const double z : {0.05, 0.5, 2.0}) {
        // Midpoint rule in x = (z/2) s^2, which removes the x^{-1/2} endpoint.
        const int n = 1000000;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double s = (i + 0.5) / n;
            const double x = 0.5 * z * s * s;
            sum += z * s * exact_pdf_zI(x, st) * exact_pdf_zI(z - x, st);
        }
        const double mid = 2.0 * sum / n;
        expect_rel(law.pdf(z), mid, 1e-8);
        expect_rel(exact_pdf_z(z, st, 1e-9), mid, 1e-8);
    }
}

TEST(ExactSirLaw, PdfIntegratesToCdf) {
    const ChannelStats st = nc_stats(8, 0.5);
    const ExactSir law(st, 1e-8);
    quad::Options o;
    o.rel_tol = 1e-10;
    for (const double z : {0.1, 1.0, 6.0}) {
        const double area = quad::integrate([&](double x) { return law.pdf(x); }, 0.0, z, o);
        EXPECT_NEAR(law.cdf(z), area, 1e-8) << z;
    }
    EXPECT_NEAR(law.cdf(1e9), 1.0, 1e-9);
    double prev = 0.0;
    for (double z = 1e-3; z < 100.0; z *= 1.5) {
        const double c = law.cdf(z);
        EXPECT_GE(c, prev);
        prev = c;
    }
}

TEST(ExactMetrics, ErgodicRateMatchesDirectSampling) {
    const ChannelStats st = nc_stats(12);
    const double c = st.delta * st.sigma2_sq;
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> x_dist(st.mu, std::sqrt(st.sigma1_sq));
    std::chi_squared_distribution<double> v_dist(st.interferers);
    const int n = 400000;
    std::vector<double> rate(n);
    for (int i = 0; i < n; ++i) {
        const double xi = x_dist(rng);
        const double xq = x_dist(rng);
        const double z = xi * xi / (c * v_dist(rng)) + xq * xq / (c * v_dist(rng));
        rate[i] = 12.0 * std::log2(1.0 + z / st.sigma2_sq);
    }
    const MeanEstimate m = mean_and_stderr(rate);
    EXPECT_NEAR(exact_er(12, st, 1e-8), m.mean, 4.0 * m.std_error);
}

TEST(ExactMetrics, OutageMatchesCdf) {
    const ChannelStats st = nc_stats(20);
    const double z_th = st.sigma2_sq;  // gamma_th = 1 bit
    EXPECT_NEAR(exact_op(1.0, st, 1e-8), ExactSir(st, 1e-8).cdf(z_th), 1e-10);
    EXPECT_EQ(exact_op(INFINITY, st), 1.0);
    EXPECT_THROW(exact_op(0.0, st), DomainError);
}

TEST(ExactMetrics, SymmetricSecrecyIsOneHalf) {
    const ChannelStats st = nc_stats(16);
    EXPECT_NEAR(exact_sop(st, st, 0.0, 1e-8), 0.5, 1e-7);
    EXPECT_NEAR(sop_lower_numeric(st, st, 0.0, 1e-8), 0.5, 1e-7);
}

TEST(ExactMetrics, SecrecyBoundOrdering) {
    const ChannelStats b = channel_stats(find_preset("6GHz-VC").grid, 1.0, 20, 1.0);
    const ChannelStats e = nc_stats(20);
    double prev = 0.0;
    for (const double rs : {0.0, 0.5, 1.0, 2.0}) {
        const double sop = exact_sop(b, e, rs);
        const double lower = sop_lower_numeric(b, e, rs);
        EXPECT_GE(sop + 1e-6, lower) << rs;
        EXPECT_GE(sop + 1e-9, prev) << rs;
        prev = sop;
    }
    EXPECT_THROW(exact_sop(b, e, -1.0), DomainError);
}

TEST(RateIntegrals, PointMassGivesZeroRate) {
    const PointMassSir zero;
    EXPECT_EQ(ergodic_rate(5, 1.0, zero, 1e-6), 0.0);
    EXPECT_EQ(secrecy_outage(zero, zero, 1.0, 1e-6), 1.0);
    EXPECT_THROW(zero.pdf(1.0), DomainError);
    EXPECT_THROW(ergodic_rate(1, 1.0, zero, 1e-6), DomainError);
    EXPECT_THROW(ergodic_rate(5, 1.0, zero, 0.0), DomainError);
}

}  // namespace
