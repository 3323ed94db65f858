#pragma once

#include <functional>

namespace cuma::quad {

using Integrand = std::function<double(double)>;

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 4000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    int subdivisions = 0;
};

/// Globally adaptive 21-point Gauss-Kronrod on a finite interval. Throws
/// ConvergenceError when the subdivision budget runs out above tolerance.
Result adaptive(const Integrand& f, double a, double b, const Options& opts = {});

/// Same, returning the value only.
double integrate(const Integrand& f, double a, double b, const Options& opts = {});

/// int_a^b f with x = a + (b - a) s^2, which absorbs a (x - a)^{-1/2} endpoint singularity.
double integrate_sqrt_left(const Integrand& f, double a, double b, const Options& opts = {});

/// int_a^b f with x = b - (b - a) s^2 for a (b - x)^{-1/2} singularity at b.
double integrate_sqrt_right(const Integrand& f, double a, double b, const Options& opts = {});

/// int_0^inf f with x = scale * t / (1 - t). `scale` should sit near the bulk of f.
double integrate_half_line(const Integrand& f, const Options& opts = {}, double scale = 1.0);

/// int_0^inf f with x = scale * (u / (1 - u))^2: absorbs an x^{-1/2} singularity at the origin.
double integrate_half_line_sqrt(const Integrand& f, const Options& opts = {}, double scale = 1.0);

}  // namespace cuma::quad
