#include "cuma/statistics.hpp"

#include "cuma/error.hpp"

#include <algorithm>
#include <cmath>

namespace cuma {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) {
        throw DomainError("EmpiricalCdf: empty sample");
    }
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("EmpiricalCdf::quantile: p must lie in [0, 1]");
    }
    const auto n = sorted_.size();
    const auto idx = std::min(n - 1, static_cast<std::size_t>(std::ceil(p * static_cast<double>(n))) -
                                         (p > 0.0 ? 1 : 0));
    return sorted_[idx];
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) {
        throw DomainError("ks_statistic: empty sample");
    }
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = cdf(s[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw DomainError("ks_two_sample: empty sample");
    }
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) {
            ++i;
        }
        while (j < y.size() && y[j] <= v) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    return d;
}

MeanEstimate mean_and_stderr(std::span<const double> values) {
    if (values.size() < 2) {
        throw DomainError("mean_and_stderr: need at least two values");
    }
    // Welford keeps the variance accurate for large means.
    double mean = 0.0;
    double m2 = 0.0;
    double k = 0.0;
    for (const double v : values) {
        k += 1.0;
        const double delta = v - mean;
        mean += delta / k;
        m2 += delta * (v - mean);
    }
    const double var = m2 / (k - 1.0);
    return {mean, std::sqrt(var / k)};
}

}  // namespace cuma
