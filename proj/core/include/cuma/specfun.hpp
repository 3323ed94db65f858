#pragma once

namespace cuma::specfun {

/// Truncation control for the hypergeometric power series.
struct SeriesControl {
    double rel_tol = 1e-14;
    int max_terms = 10000;
};

/// Throws DomainError unless rel_tol is in (0, 1e-6] and max_terms >= 100.
void validate(const SeriesControl& ctl);

/// Gamma function for x > 0.
double gamma_fn(double x);

/// log Gamma(x) for x > 0; thread-safe (no signgam side effect).
double log_gamma(double x);

/// Upper incomplete gamma Gamma(a, x) for a >= 0, x >= 0 (a = 0 requires x > 0).
double upper_incomplete_gamma(double a, double x);

/// e^x * Gamma(0, x) = e^x E1(x) for x > 0, without overflow for large x.
double scaled_exp_integral_e1(double x);

/// Kummer confluent hypergeometric 1F1(a; b; x). Negative x goes through
/// the Kummer transformation e^x 1F1(b-a; b; -x).
double kummer_1f1(double a, double b, double x, const SeriesControl& ctl = {});

/// Gauss hypergeometric 2F1(a, b; c; x) for x <= 0. Arguments below -1 are
/// first mapped with the Pfaff transformation.
double gauss_2f1(double a, double b, double c, double x, const SeriesControl& ctl = {});

/// Whittaker M_{a,b}(t) = t^{b+1/2} e^{-t/2} 1F1(b - a + 1/2; 2b + 1; t) for t >= 0.
double whittaker_m(double a, double b, double t, const SeriesControl& ctl = {});

/// log M_{a,b}(t) for t > 0 when the 1F1 factor is positive.
double log_whittaker_m(double a, double b, double t, const SeriesControl& ctl = {});

}  // namespace cuma::specfun
