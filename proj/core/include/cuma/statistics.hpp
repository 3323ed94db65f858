#pragma once

#include <functional>
#include <span>
#include <vector>

namespace cuma {

/// Step-function CDF of a sample.
class EmpiricalCdf {
public:
    explicit EmpiricalCdf(std::vector<double> samples);

    /// Fraction of samples <= x.
    double operator()(double x) const;

    double quantile(double p) const;
    const std::vector<double>& sorted() const noexcept { return sorted_; }
    std::size_t size() const noexcept { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

/// sup_x |F_n(x) - F(x)| for a continuous reference CDF.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Sample mean and standard error of the mean.
MeanEstimate mean_and_stderr(std::span<const double> values);

}  // namespace cuma
