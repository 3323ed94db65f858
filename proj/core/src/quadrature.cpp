#include "cuma/quadrature.hpp"

#include "cuma/error.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace cuma::quad {

namespace {

// QUADPACK qk21 abscissae (positive half) and weights.
constexpr std::array<double, 11> kXgk{
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk{
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208863035800, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss 10-point weights on the odd Kronrod nodes.
constexpr std::array<double, 5> kWg{
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod21(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<double, 21> fv{};
    fv[20] = f(center);
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        fv[2 * j] = f(center - dx);
        fv[2 * j + 1] = f(center + dx);
    }
    double kronrod = fv[20] * kWgk[10];
    double gauss = 0.0;
    double abs_sum = std::abs(fv[20]) * kWgk[10];
    for (int j = 0; j < 10; ++j) {
        const double pair = fv[2 * j] + fv[2 * j + 1];
        kronrod += kWgk[j] * pair;
        abs_sum += kWgk[j] * (std::abs(fv[2 * j]) + std::abs(fv[2 * j + 1]));
        if (j % 2 == 1) {
            gauss += kWg[j / 2] * pair;
        }
    }
    const double mean = 0.5 * kronrod;
    double asc = kWgk[10] * std::abs(fv[20] - mean);
    for (int j = 0; j < 10; ++j) {
        asc += kWgk[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));
    }
    const double value = kronrod * half;
    const double res_abs = abs_sum * std::abs(half);
    const double res_asc = asc * std::abs(half);
    double error = std::abs((kronrod - gauss) * half);
    // QUADPACK error scaling.
    if (res_asc != 0.0 && error != 0.0) {
        error = res_asc * std::min(1.0, std::pow(200.0 * error / res_asc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        error = std::max(50.0 * eps * res_abs, error);
    }
    if (!std::isfinite(value)) {
        std::ostringstream os;
        os << "quadrature: non-finite integrand on [" << a << ", " << b << "]";
        throw NumericalError(os.str());
    }
    return {a, b, value, error};
}

void check_scale(double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw DomainError("quadrature: half-line scale must be positive and finite");
    }
}

}  // namespace

Result adaptive(const Integrand& f, double a, double b, const Options& opts) {
    Result out;
    if (a == b) {
        return out;
    }
    std::priority_queue<Segment> heap;
    Segment first = kronrod21(f, a, b);
    out.evaluations = 21;
    double total = first.value;
    double total_err = first.error;
    heap.push(first);

    auto done = [&] {
        return total_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
    };

    while (!done()) {
        if (out.subdivisions >= opts.max_subdivisions) {
            std::ostringstream os;
            os << "quadrature did not converge on [" << a << ", " << b << "]: estimate " << total
               << ", error " << total_err << " after " << out.subdivisions << " subdivisions";
            throw ConvergenceError(os.str());
        }
        Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval exhausted at machine precision; accept what we have.
            break;
        }
        heap.pop();
        const Segment left = kronrod21(f, worst.a, mid);
        const Segment right = kronrod21(f, mid, worst.b);
        out.evaluations += 42;
        ++out.subdivisions;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed the drift of the running updates.
    out.value = 0.0;
    out.error = 0.0;
    while (!heap.empty()) {
        out.value += heap.top().value;
        out.error += heap.top().error;
        heap.pop();
    }
    return out;
}

double integrate(const Integrand& f, double a, double b, const Options& opts) {
    return adaptive(f, a, b, opts).value;
}

double integrate_sqrt_left(const Integrand& f, double a, double b, const Options& opts) {
    const double w = b - a;
    return integrate([&](double s) { return 2.0 * w * s * f(a + w * s * s); }, 0.0, 1.0, opts);
}

double integrate_sqrt_right(const Integrand& f, double a, double b, const Options& opts) {
    const double w = b - a;
    return integrate([&](double s) { return 2.0 * w * s * f(b - w * s * s); }, 0.0, 1.0, opts);
}

double integrate_half_line(const Integrand& f, const Options& opts, double scale) {
    check_scale(scale);
    return integrate(
        [&](double t) {
            if (t >= 1.0) {
                return 0.0;
            }
            const double one_minus = 1.0 - t;
            const double x = scale * t / one_minus;
            const double jac = scale / (one_minus * one_minus);
            if (!std::isfinite(x) || !std::isfinite(jac)) {
                return 0.0;
            }
            const double v = f(x) * jac;
            return std::isfinite(v) ? v : 0.0;
        },
        0.0, 1.0, opts);
}

double integrate_half_line_sqrt(const Integrand& f, const Options& opts, double scale) {
    check_scale(scale);
    return integrate(
        [&](double u) {
            if (u <= 0.0 || u >= 1.0) {
                return 0.0;
            }
            const double one_minus = 1.0 - u;
            const double r = u / one_minus;
            const double x = scale * r * r;
            // dx/du = 2 scale u / (1 - u)^3
            const double jac = 2.0 * scale * u / (one_minus * one_minus * one_minus);
            if (!std::isfinite(x) || !std::isfinite(jac)) {
                return 0.0;
            }
            const double v = f(x) * jac;
            return std::isfinite(v) ? v : 0.0;
        },
        0.0, 1.0, opts);
}

}  // namespace cuma::quad
