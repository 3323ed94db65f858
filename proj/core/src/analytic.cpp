#include "cuma/analytic.hpp"

#include "cuma/error.hpp"
#include "cuma/quadrature.hpp"
#include "cuma/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cuma {

namespace {

constexpr double kPi = std::numbers::pi;

void require_tol(double quad_tol, const char* who) {
    if (!(quad_tol > 0.0 && quad_tol < 1.0)) {
        std::ostringstream os;
        os << who << ": quad_tol must lie in (0, 1)";
        throw DomainError(os.str());
    }
}

quad::Options outer_options(double quad_tol) {
    quad::Options o;
    o.rel_tol = quad_tol;
    o.abs_tol = quad_tol * 1e-3;
    return o;
}

// Inner integrals feed outer quadratures, so they run two digits tighter.
// Probabilities get an absolute floor; densities are judged relatively.
quad::Options inner_options(double quad_tol, bool probability) {
    quad::Options o;
    o.rel_tol = std::max(quad_tol * 1e-2, 1e-13);
    o.abs_tol = probability ? std::max(quad_tol * 1e-5, 1e-15) : 1e-300;
    return o;
}

// The in-phase SIR law with its z-independent constants folded once.
class InphaseLaw {
public:
    explicit InphaseLaw(const ChannelStats& st)
        : c_(st.delta * st.sigma2_sq),
          s_(st.sigma1_sq),
          mu_sq_(st.mu * st.mu),
          big_i_(st.interferers) {
        const double i = big_i_;
        log_const_ = 0.25 * std::log(c_) + specfun::log_gamma(0.5 * (i + 1.0)) -
                     specfun::log_gamma(0.5 * i) - 0.5 * std::log(kPi) - 0.5 * i * std::log(2.0) -
                     0.5 * std::log(st.mu);
        wa_ = -(2.0 * i + 1.0) / 4.0;
    }

    double log_pdf(double z) const {
        const double q = c_ * z;
        const double t = mu_sq_ * q / (2.0 * s_ * (s_ + q));
        if (!(t > 0.0)) {
            throw NumericalError("exact_pdf_zI: argument underflow at tiny z");
        }
        const double expo = -mu_sq_ / (4.0 * s_) * (2.0 * s_ + q) / (s_ + q);
        const double power = -wa_ * (std::log(2.0) - std::log1p(q / s_));
        return log_const_ - 0.75 * std::log(z) + expo + power + specfun::log_whittaker_m(wa_, -0.25, t);
    }

    double pdf(double z) const {
        if (z <= 0.0) {
            return 0.0;
        }
        return std::exp(log_pdf(z));
    }

private:
    double c_;
    double s_;
    double mu_sq_;
    int big_i_;
    double log_const_ = 0.0;
    double wa_ = 0.0;
};

void check_z(double z, const char* who) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        std::ostringstream os;
        os << who << ": z must be positive and finite";
        throw DomainError(os.str());
    }
}

double tau_of(double rs) {
    if (!(rs >= 0.0) || !std::isfinite(rs)) {
        throw DomainError("secrecy rate must be finite and nonnegative");
    }
    return std::exp2(rs);
}

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

std::vector<int> selected_ports(const PortGrid& grid, int nbar, PairingPolicy policy) {
    const int n = grid.size();
    if (nbar == 0) {
        nbar = n;
    }
    if (nbar < 1 || nbar > n) {
        throw DomainError("selected_ports: nbar must lie in [1, N]");
    }
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(nbar));
    switch (policy.mode) {
        case PairingMode::all_ports:
            if (nbar != n) {
                throw DomainError("selected_ports: all-ports policy requires nbar = N");
            }
            [[fallthrough]];
        case PairingMode::first_nbar:
            for (int k = 0; k < nbar; ++k) {
                out.push_back(k);
            }
            break;
        case PairingMode::stride: {
            const int step = n / nbar;
            for (int k = 0; k < nbar; ++k) {
                out.push_back(k * step);
            }
            break;
        }
        default:
            throw DomainError("selected_ports: unknown pairing mode");
    }
    return out;
}

ChannelStats ChannelStats::make(double omega, int nbar, double sigma1_sq, double sigma2_sq, int interferers,
                                double delta) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw DomainError("ChannelStats: omega must be positive");
    }
    if (nbar < 1) {
        throw DomainError("ChannelStats: nbar must be at least 1");
    }
    if (!(sigma1_sq > 0.0) || !std::isfinite(sigma1_sq) || !(sigma2_sq > 0.0) || !std::isfinite(sigma2_sq)) {
        throw DomainError("ChannelStats: sigma1_sq and sigma2_sq must be positive");
    }
    if (interferers < 1) {
        throw DomainError("ChannelStats: need at least one interferer");
    }
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw DomainError("ChannelStats: delta must lie in (0, 1]");
    }
    ChannelStats s;
    s.omega = omega;
    s.nbar = nbar;
    s.mu = 0.5 * nbar * std::sqrt(omega / kPi);
    s.sigma1_sq = sigma1_sq;
    s.sigma2_sq = sigma2_sq;
    s.interferers = interferers;
    s.delta = delta;
    return s;
}

double w_func(double a, double b, double c) {
    if (!(b > 0.0) || !std::isfinite(b) || !std::isfinite(a)) {
        throw DomainError("w_func: need finite a and b > 0");
    }
    if (!(c > -1.0) || !std::isfinite(c)) {
        throw DomainError("w_func: need c > -1 for the moment integral to exist");
    }
    const double d = 0.5 * (2.0 * c + 3.0);
    double first = 0.0;
    if (a != 0.0) {
        const double log_scale = specfun::log_gamma(d) - d * std::log(b);
        first = -a * std::exp(log_scale) / std::sqrt(2.0 * kPi) *
                specfun::gauss_2f1(0.5, d, 1.5, -a * a / (2.0 * b));
    }
    const double second = 0.5 * std::exp(specfun::log_gamma(c + 1.0) - (c + 1.0) * std::log(b));
    return first + second;
}

double cov_pair(double rho, double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw DomainError("cov_pair: omega must be positive");
    }
    if (!(std::abs(rho) <= 1.0)) {
        throw DomainError("cov_pair: |rho| must not exceed 1");
    }
    if (rho == 1.0) {
        return 0.25 * omega * (1.0 - 1.0 / kPi);
    }
    if (rho == -1.0) {
        return -omega / (4.0 * kPi);
    }
    const double one_minus = 1.0 - rho * rho;
    const double lead = std::pow(one_minus, 1.5) * omega / (4.0 * kPi) - omega / (4.0 * kPi);
    if (rho == 0.0) {
        return lead;
    }
    const double a = -std::sqrt(2.0 / one_minus) * rho / std::sqrt(omega);
    return lead + rho / (2.0 * std::sqrt(kPi * omega)) * w_func(a, 1.0 / omega, 0.5);
}

SigmaSums sigma_sums(const PortGrid& grid, double omega, int nbar, PairingPolicy policy) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw DomainError("sigma_sums: omega must be positive");
    }
    const std::vector<int> ports = selected_ports(grid, nbar, policy);
    const int count = static_cast<int>(ports.size());

    // Pair multiplicities per absolute offset (d1, d2), unordered pairs only.
    std::vector<double> mult(static_cast<std::size_t>(grid.n1) * grid.n2, 0.0);
    auto slot = [&](int d1, int d2) -> double& { return mult[static_cast<std::size_t>(d2) * grid.n1 + d1]; };
    if (policy.mode == PairingMode::all_ports) {
        for (int d2 = 0; d2 < grid.n2; ++d2) {
            for (int d1 = 0; d1 < grid.n1; ++d1) {
                if (d1 == 0 && d2 == 0) {
                    continue;
                }
                const double base = static_cast<double>(grid.n1 - d1) * (grid.n2 - d2);
                slot(d1, d2) = (d1 > 0 && d2 > 0) ? 2.0 * base : base;
            }
        }
    } else {
        for (int i = 0; i < count; ++i) {
            const PortCoords pi = port_index_to_coords(ports[i] + 1, grid);
            for (int j = i + 1; j < count; ++j) {
                const PortCoords pj = port_index_to_coords(ports[j] + 1, grid);
                slot(std::abs(pi.n1 - pj.n1), std::abs(pi.n2 - pj.n2)) += 1.0;
            }
        }
    }

    double rho_sum = 0.0;
    double cov_sum = 0.0;
    for (int d2 = 0; d2 < grid.n2; ++d2) {
        for (int d1 = 0; d1 < grid.n1; ++d1) {
            const double m = slot(d1, d2);
            if (m == 0.0) {
                continue;
            }
            const double rho = correlation_at_offset(d1, d2, grid);
            rho_sum += m * rho;
            cov_sum += m * cov_pair(rho, omega);
        }
    }
    SigmaSums out;
    out.nbar = count;
    out.sigma2_sq = 0.25 * omega * (count + rho_sum);
    out.sigma1_sq = 0.25 * count * omega * (1.0 - 1.0 / kPi) + 2.0 * cov_sum;
    return out;
}

ChannelStats channel_stats(const PortGrid& grid, double omega, int users, double delta, PairingPolicy policy,
                           int nbar) {
    if (users < 2) {
        throw DomainError("channel_stats: need at least two users");
    }
    const SigmaSums s = sigma_sums(grid, omega, nbar, policy);
    return ChannelStats::make(omega, s.nbar, s.sigma1_sq, s.sigma2_sq, users - 1, delta);
}

double exact_pdf_zI(double z, const ChannelStats& stats) {
    check_z(z, "exact_pdf_zI");
    return InphaseLaw(stats).pdf(z);
}

double exact_cdf_zI(double z, const ChannelStats& stats, double quad_tol) {
    require_tol(quad_tol, "exact_cdf_zI");
    if (z <= 0.0) {
        return 0.0;
    }
    if (std::isinf(z)) {
        return 1.0;
    }
    const InphaseLaw law(stats);
    const auto f = [&](double x) { return law.pdf(x); };
    return clamp01(quad::integrate_sqrt_left(f, 0.0, z, outer_options(quad_tol)));
}

double exact_pdf_z(double z, const ChannelStats& stats, double quad_tol) {
    check_z(z, "exact_pdf_z");
    require_tol(quad_tol, "exact_pdf_z");
    const InphaseLaw law(stats);
    // Symmetric in x <-> z - x: integrate the lower half and double.
    const auto f = [&](double x) { return law.pdf(x) * law.pdf(z - x); };
    quad::Options o = outer_options(quad_tol);
    o.abs_tol = 1e-300;
    return 2.0 * quad::integrate_sqrt_left(f, 0.0, 0.5 * z, o);
}

double exact_cdf_z(double z, const ChannelStats& stats, double quad_tol) {
    require_tol(quad_tol, "exact_cdf_z");
    if (z <= 0.0) {
        return 0.0;
    }
    return ExactSir(stats, quad_tol).cdf(z);
}

// ---------------------------------------------------------------------------

double SirDistribution::expect(const std::function<double(double)>& g, double quad_tol) const {
    require_tol(quad_tol, "expect");
    const auto h = [&](double z) {
        if (z <= 0.0) {
            return 0.0;
        }
        const double p = pdf(z);
        return p == 0.0 ? 0.0 : g(z) * p;
    };
    return quad::integrate_half_line(h, outer_options(quad_tol), typical_scale());
}

struct ExactSir::Impl {
    ChannelStats stats;
    InphaseLaw law;
    double tol;
    // In-phase CDF tabulated on u = sqrt(z) / (1 + sqrt(z)) in [0, 1], with
    // cubic Hermite interpolation using the exact derivative dF/du.
    std::vector<double> cdf_nodes;
    std::vector<double> slope_nodes;
    double h = 0.0;
    double scale = 1.0;

    static constexpr int kSegments = 1024;

    Impl(const ChannelStats& s, double quad_tol) : stats(s), law(s), tol(quad_tol) { build(); }

    static double z_of(double u) {
        const double r = u / (1.0 - u);
        return r * r;
    }

    double g(double u) const {
        // dF/du; the limits at both ends are finite, so probe just inside.
        const double uu = std::clamp(u, 1e-12, 1.0 - 1e-9);
        const double one_minus = 1.0 - uu;
        const double jac = 2.0 * uu / (one_minus * one_minus * one_minus);
        return law.pdf(z_of(uu)) * jac;
    }

    void build() {
        h = 1.0 / kSegments;
        cdf_nodes.assign(kSegments + 1, 0.0);
        slope_nodes.assign(kSegments + 1, 0.0);
        quad::Options o;
        o.rel_tol = 1e-12;
        o.abs_tol = 1e-17;
        const auto gf = [this](double u) { return g(u); };
        double acc = 0.0;
        for (int j = 0; j <= kSegments; ++j) {
            slope_nodes[j] = g(j * h);
            if (j > 0) {
                acc += quad::integrate(gf, (j - 1) * h, j * h, o);
            }
            cdf_nodes[j] = acc;
        }
        if (std::abs(acc - 1.0) > std::max(1e-6, 10.0 * tol)) {
            std::ostringstream os;
            os << "ExactSir: in-phase law integrates to " << acc;
            throw NumericalError(os.str());
        }
        // Median of Z_I doubled as the characteristic magnitude of Z.
        const auto it = std::lower_bound(cdf_nodes.begin(), cdf_nodes.end(), 0.5);
        const int j = std::max(1, static_cast<int>(it - cdf_nodes.begin()));
        scale = 2.0 * z_of(std::min(j * h, 1.0 - 1e-9));
    }

    double inphase_cdf(double z) const {
        if (z <= 0.0) {
            return 0.0;
        }
        if (std::isinf(z)) {
            return 1.0;
        }
        const double r = std::sqrt(z);
        const double u = r / (1.0 + r);
        const int j = std::min(static_cast<int>(u / h), kSegments - 1);
        const double t = (u - j * h) / h;
        const double t2 = t * t;
        const double t3 = t2 * t;
        const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        const double h10 = t3 - 2.0 * t2 + t;
        const double h01 = -2.0 * t3 + 3.0 * t2;
        const double h11 = t3 - t2;
        const double v = h00 * cdf_nodes[j] + h10 * h * slope_nodes[j] + h01 * cdf_nodes[j + 1] +
                         h11 * h * slope_nodes[j + 1];
        return clamp01(v);
    }

    double pdf(double z) const {
        if (z <= 0.0) {
            return 0.0;
        }
        const auto f = [&](double x) { return law.pdf(x) * law.pdf(z - x); };
        return 2.0 * quad::integrate_sqrt_left(f, 0.0, 0.5 * z, inner_options(tol, false));
    }

    double cdf(double z) const {
        if (z <= 0.0) {
            return 0.0;
        }
        if (std::isinf(z)) {
            return 1.0;
        }
        const double half = inphase_cdf(0.5 * z);
        const quad::Options o = inner_options(tol, true);
        if (half < 0.5) {
            // F(z) = 2 int_0^{z/2} f(x) F_I(z - x) dx - F_I(z/2)^2
            const auto f = [&](double x) { return law.pdf(x) * inphase_cdf(z - x); };
            return clamp01(2.0 * quad::integrate_sqrt_left(f, 0.0, 0.5 * z, o) - half * half);
        }
        // Survival form keeps precision in the upper tail.
        const auto f = [&](double x) { return law.pdf(x) * (1.0 - inphase_cdf(z - x)); };
        const double tail = 1.0 - half;
        return clamp01(1.0 - (2.0 * quad::integrate_sqrt_left(f, 0.0, 0.5 * z, o) + tail * tail));
    }
};

ExactSir::ExactSir(const ChannelStats& stats, double quad_tol) {
    require_tol(quad_tol, "ExactSir");
    impl_ = std::make_unique<Impl>(stats, quad_tol);
}
ExactSir::~ExactSir() = default;
ExactSir::ExactSir(ExactSir&&) noexcept = default;
ExactSir& ExactSir::operator=(ExactSir&&) noexcept = default;

double ExactSir::pdf(double z) const { return impl_->pdf(z); }
double ExactSir::cdf(double z) const { return impl_->cdf(z); }
double ExactSir::typical_scale() const { return impl_->scale; }
double ExactSir::inphase_pdf(double z) const { return impl_->law.pdf(z); }
double ExactSir::inphase_cdf(double z) const { return impl_->inphase_cdf(z); }
const ChannelStats& ExactSir::stats() const noexcept { return impl_->stats; }

double PointMassSir::pdf(double) const {
    throw DomainError("PointMassSir has no density");
}
double PointMassSir::cdf(double z) const { return z >= 0.0 ? 1.0 : 0.0; }
double PointMassSir::expect(const std::function<double(double)>& g, double) const { return g(0.0); }

double ergodic_rate(int users, double sigma2_sq, const SirDistribution& law, double quad_tol) {
    if (users < 2) {
        throw DomainError("ergodic_rate: need at least two users");
    }
    if (!(sigma2_sq > 0.0)) {
        throw DomainError("ergodic_rate: sigma2_sq must be positive");
    }
    require_tol(quad_tol, "ergodic_rate");
    const double per_user = law.expect([&](double z) { return std::log2(1.0 + z / sigma2_sq); }, quad_tol);
    return users * per_user;
}

double secrecy_outage(const SirDistribution& bob, const SirDistribution& eve, double rs, double quad_tol) {
    const double tau = tau_of(rs);
    require_tol(quad_tol, "secrecy_outage");
    return clamp01(eve.expect([&](double z) { return bob.cdf(tau * (1.0 + z) - 1.0); }, quad_tol));
}

double secrecy_outage_lower(const SirDistribution& bob, const SirDistribution& eve, double rs,
                            double quad_tol) {
    const double tau = tau_of(rs);
    require_tol(quad_tol, "secrecy_outage_lower");
    return clamp01(eve.expect([&](double z) { return bob.cdf(tau * z); }, quad_tol));
}

double exact_er(int users, const ChannelStats& stats, double quad_tol) {
    return ergodic_rate(users, stats.sigma2_sq, ExactSir(stats, quad_tol), quad_tol);
}

double exact_op(double gamma_th, const ChannelStats& stats, double quad_tol) {
    if (!(gamma_th > 0.0)) {
        throw DomainError("exact_op: gamma_th must be positive");
    }
    if (std::isinf(gamma_th)) {
        return 1.0;
    }
    const double z_th = std::expm1(gamma_th * std::numbers::ln2) * stats.sigma2_sq;
    return exact_cdf_z(z_th, stats, quad_tol);
}

double exact_sop(const ChannelStats& stats_b, const ChannelStats& stats_e, double rs, double quad_tol) {
    tau_of(rs);
    return secrecy_outage(ExactSir(stats_b, quad_tol), ExactSir(stats_e, quad_tol), rs, quad_tol);
}

double sop_lower_numeric(const ChannelStats& stats_b, const ChannelStats& stats_e, double rs, double quad_tol) {
    tau_of(rs);
    return secrecy_outage_lower(ExactSir(stats_b, quad_tol), ExactSir(stats_e, quad_tol), rs, quad_tol);
}

}  // namespace cuma
