#include "cuma/specfun.hpp"

#include "cuma/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace cuma::specfun {

namespace {

bool is_nonpositive_integer(double v) { return v <= 0.0 && std::floor(v) == v; }

[[noreturn]] void throw_nonconvergence(const char* what, double a, double b, double c, double x) {
    std::ostringstream os;
    os.precision(17);
    os << what << " did not converge for (" << a << ", " << b;
    if (!std::isnan(c)) {
        os << ", " << c;
    }
    os << ", " << x << ")";
    throw ConvergenceError(os.str());
}

// 1 / Gamma(v), zero at the poles.
double reciprocal_gamma(double v) {
    if (is_nonpositive_integer(v)) {
        return 0.0;
    }
    return 1.0 / std::tgamma(v);
}

double hyp1f1_series(double a, double b, double x, const SeriesControl& ctl) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < ctl.max_terms; ++n) {
        const double ratio = (a + n) / (b + n) * x / (n + 1.0);
        term *= ratio;
        sum += term;
        if (term == 0.0) {
            return sum;
        }
        if (std::abs(term) <= ctl.rel_tol * std::abs(sum) && std::abs(ratio) < 0.5) {
            return sum;
        }
    }
    throw_nonconvergence("1F1 series", a, b, std::numeric_limits<double>::quiet_NaN(), x);
}

// log 1F1 for a, b, x > 0: every term is positive, so rescale instead of overflowing.
double log_hyp1f1_positive(double a, double b, double x, const SeriesControl& ctl) {
    constexpr double big = 1e200;
    const double log_big = std::log(big);
    double term = 1.0;
    double sum = 1.0;
    double shift = 0.0;
    for (int n = 0; n < ctl.max_terms; ++n) {
        const double ratio = (a + n) / (b + n) * x / (n + 1.0);
        term *= ratio;
        sum += term;
        if (sum > big) {
            sum /= big;
            term /= big;
            shift += log_big;
        }
        if (term <= ctl.rel_tol * sum && ratio < 0.5) {
            return std::log(sum) + shift;
        }
    }
    throw_nonconvergence("1F1 series", a, b, std::numeric_limits<double>::quiet_NaN(), x);
}

double hyp2f1_series(double a, double b, double c, double x, const SeriesControl& ctl) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < ctl.max_terms; ++n) {
        const double ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        term *= ratio;
        sum += term;
        if (term == 0.0) {
            return sum;
        }
        // Geometric bound on the tail once the ratio settles below 1.
        if (std::abs(ratio) < 1.0 && std::abs(term) <= ctl.rel_tol * std::abs(sum) * (1.0 - std::abs(ratio))) {
            return sum;
        }
    }
    throw_nonconvergence("2F1 series", a, b, c, x);
}

// 2F1 on 0 <= y < 1. Near 1 the direct series crawls, so switch to the
// expansion around 1 - y when c - a - b is not an integer.
double hyp2f1_unit_interval(double a, double b, double c, double y, const SeriesControl& ctl) {
    const double s = c - a - b;
    if (y <= 0.9 || std::floor(s) == s) {
        return hyp2f1_series(a, b, c, y, ctl);
    }
    const double w = 1.0 - y;
    const double g_c = std::tgamma(c);
    const double t1 = g_c * std::tgamma(s) * reciprocal_gamma(c - a) * reciprocal_gamma(c - b);
    const double t2 = g_c * std::tgamma(-s) * reciprocal_gamma(a) * reciprocal_gamma(b);
    double out = 0.0;
    if (t1 != 0.0) {
        out += t1 * hyp2f1_series(a, b, 1.0 - s, w, ctl);
    }
    if (t2 != 0.0) {
        out += t2 * std::pow(w, s) * hyp2f1_series(c - a, c - b, 1.0 + s, w, ctl);
    }
    return out;
}

// e^{-x} x^a sum_n x^n / (a (a+1) ... (a+n)) = lower gamma(a, x).
double lower_gamma_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 100000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) {
            return sum * std::exp(a * std::log(x) - x);
        }
    }
    throw_nonconvergence("lower incomplete gamma series", a, x, std::numeric_limits<double>::quiet_NaN(),
                         0.0);
}

// Modified Lentz evaluation of the continued fraction for e^{x} x^{-a} Gamma(a, x).
double upper_gamma_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = b + an / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) {
            return h;
        }
    }
    throw_nonconvergence("upper incomplete gamma fraction", a, x, std::numeric_limits<double>::quiet_NaN(),
                         0.0);
}

}  // namespace

void validate(const SeriesControl& ctl) {
    if (!(ctl.rel_tol > 0.0 && ctl.rel_tol <= 1e-6)) {
        throw DomainError("SeriesControl.rel_tol must lie in (0, 1e-6]");
    }
    if (ctl.max_terms < 100) {
        throw DomainError("SeriesControl.max_terms must be at least 100");
    }
}

double gamma_fn(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("gamma_fn: argument must be positive and finite");
    }
    const double g = std::tgamma(x);
    if (!std::isfinite(g)) {
        throw NumericalError("gamma_fn: overflow, use log_gamma");
    }
    return g;
}

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("log_gamma: argument must be positive and finite");
    }
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

double upper_incomplete_gamma(double a, double x) {
    if (!(a >= 0.0) || !(x >= 0.0) || !std::isfinite(a) || !std::isfinite(x)) {
        throw DomainError("upper_incomplete_gamma: need a >= 0 and x >= 0");
    }
    if (a == 0.0) {
        if (x == 0.0) {
            throw DomainError("upper_incomplete_gamma: Gamma(0, 0) diverges");
        }
        return std::exp(-x) * scaled_exp_integral_e1(x);
    }
    if (x == 0.0) {
        return gamma_fn(a);
    }
    if (x < a + 1.0) {
        return gamma_fn(a) - lower_gamma_series(a, x);
    }
    return std::exp(a * std::log(x) - x) * upper_gamma_fraction(a, x);
}

double scaled_exp_integral_e1(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("scaled_exp_integral_e1: argument must be positive and finite");
    }
    if (x <= 1.0) {
        // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
        double term = 1.0;
        double series = 0.0;
        for (int k = 1; k < 200; ++k) {
            term *= -x / k;
            const double add = term / k;
            series += add;
            if (std::abs(add) < 1e-17 * std::abs(series)) {
                break;
            }
        }
        return std::exp(x) * (-std::numbers::egamma - std::log(x) - series);
    }
    return upper_gamma_fraction(0.0, x);
}

double kummer_1f1(double a, double b, double x, const SeriesControl& ctl) {
    validate(ctl);
    if (is_nonpositive_integer(b)) {
        throw DomainError("kummer_1f1: b must not be a nonpositive integer");
    }
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(x)) {
        throw DomainError("kummer_1f1: non-finite argument");
    }
    if (x == 0.0) {
        return 1.0;
    }
    if (x < 0.0) {
        return std::exp(x) * hyp1f1_series(b - a, b, -x, ctl);
    }
    return hyp1f1_series(a, b, x, ctl);
}

double gauss_2f1(double a, double b, double c, double x, const SeriesControl& ctl) {
    validate(ctl);
    if (is_nonpositive_integer(c)) {
        throw DomainError("gauss_2f1: c must not be a nonpositive integer");
    }
    if (!(x <= 0.0) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(x)) {
        throw DomainError("gauss_2f1: only finite x <= 0 is supported");
    }
    if (x == 0.0) {
        return 1.0;
    }
    if (x >= -0.5) {
        return hyp2f1_series(a, b, c, x, ctl);
    }
    // Pfaff: 2F1(a,b;c;x) = (1-x)^{-a} 2F1(a, c-b; c; x/(x-1)), x/(x-1) in (1/3, 1).
    const double y = x / (x - 1.0);
    return std::pow(1.0 - x, -a) * hyp2f1_unit_interval(a, c - b, c, y, ctl);
}

double whittaker_m(double a, double b, double t, const SeriesControl& ctl) {
    if (is_nonpositive_integer(2.0 * b + 1.0)) {
        throw DomainError("whittaker_m: 2b + 1 must not be a nonpositive integer");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("whittaker_m: t must be finite and nonnegative");
    }
    const double p = b + 0.5;
    if (t == 0.0) {
        if (p > 0.0) {
            return 0.0;
        }
        throw DomainError("whittaker_m: M_{a,b}(0) is unbounded for b < -1/2");
    }
    const double f = kummer_1f1(b - a + 0.5, 2.0 * b + 1.0, t, ctl);
    return std::pow(t, p) * std::exp(-0.5 * t) * f;
}

double log_whittaker_m(double a, double b, double t, const SeriesControl& ctl) {
    if (!(t > 0.0)) {
        throw DomainError("log_whittaker_m: t must be positive");
    }
    if (is_nonpositive_integer(2.0 * b + 1.0)) {
        throw DomainError("log_whittaker_m: 2b + 1 must not be a nonpositive integer");
    }
    const double ka = b - a + 0.5;
    const double kb = 2.0 * b + 1.0;
    double log_f = 0.0;
    if (ka > 0.0 && kb > 0.0) {
        validate(ctl);
        log_f = log_hyp1f1_positive(ka, kb, t, ctl);
    } else {
        const double f = kummer_1f1(ka, kb, t, ctl);
        if (!(f > 0.0)) {
            throw NumericalError("log_whittaker_m: 1F1 factor is not positive");
        }
        log_f = std::log(f);
    }
    return (b + 0.5) * std::log(t) - 0.5 * t + log_f;
}

}  // namespace cuma::specfun
