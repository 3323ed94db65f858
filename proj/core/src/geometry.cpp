#include "cuma/geometry.hpp"

#include "cuma/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cuma {

namespace {

int ports_along(double extent_wavelengths, double spacing) {
    const double ratio = extent_wavelengths / spacing;
    // A few ulps below an integer still counts as that integer.
    const double guarded = ratio + 1e-9 * std::max(1.0, ratio);
    return static_cast<int>(std::floor(guarded)) + 1;
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

PortGrid make_grid(int n1, int n2, double w1, double w2) {
    if (n1 < 2 || n2 < 2) {
        std::ostringstream os;
        os << "port grid needs at least 2 ports per dimension, got " << n1 << "x" << n2;
        throw DomainError(os.str());
    }
    if (!finite_positive(w1) || !finite_positive(w2)) {
        throw DomainError("port grid aperture must be finite and positive");
    }
    return PortGrid{n1, n2, w1, w2};
}

PortGrid grid_from_aperture(double width_m, double height_m, double freq_hz, double spacing1,
                            double spacing2) {
    for (double v : {width_m, height_m, freq_hz, spacing1, spacing2}) {
        if (!finite_positive(v)) {
            throw DomainError("grid_from_aperture: inputs must be finite and strictly positive");
        }
    }
    const double w1 = width_m * freq_hz / kSpeedOfLight;
    const double w2 = height_m * freq_hz / kSpeedOfLight;
    if (spacing1 > w1 || spacing2 > w2) {
        throw DomainError("grid_from_aperture: port spacing exceeds the aperture");
    }
    return make_grid(ports_along(w1, spacing1), ports_along(w2, spacing2), w1, w2);
}

PortCoords port_index_to_coords(int k, const PortGrid& grid) {
    if (k < 1 || k > grid.size()) {
        std::ostringstream os;
        os << "port index " << k << " outside [1, " << grid.size() << "]";
        throw DomainError(os.str());
    }
    const int r = k % grid.n1;
    if (r == 0) {
        return {grid.n1, k / grid.n1};
    }
    return {r, k / grid.n1 + 1};
}

double sinc_j0(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

double correlation_at_offset(int d1, int d2, const PortGrid& grid) {
    const double a = static_cast<double>(d1) * grid.w1 / (grid.n1 - 1);
    const double b = static_cast<double>(d2) * grid.w2 / (grid.n2 - 1);
    return sinc_j0(2.0 * std::numbers::pi * std::sqrt(a * a + b * b));
}

double correlation(int k, int m, const PortGrid& grid) {
    const PortCoords p = port_index_to_coords(k, grid);
    const PortCoords q = port_index_to_coords(m, grid);
    return correlation_at_offset(std::abs(p.n1 - q.n1), std::abs(p.n2 - q.n2), grid);
}

CorrelationMatrix CorrelationMatrix::from_grid(const PortGrid& grid, double psd_tol) {
    const int n = grid.size();
    // The matrix depends only on the offset, so tabulate the distinct values first.
    Eigen::MatrixXd by_offset(grid.n1, grid.n2);
    for (int d2 = 0; d2 < grid.n2; ++d2) {
        for (int d1 = 0; d1 < grid.n1; ++d1) {
            by_offset(d1, d2) = correlation_at_offset(d1, d2, grid);
        }
    }
    Eigen::MatrixXd entries(n, n);
    for (int m = 0; m < n; ++m) {
        const int m1 = m % grid.n1;
        const int m2 = m / grid.n1;
        for (int k = 0; k < n; ++k) {
            entries(k, m) = by_offset(std::abs(k % grid.n1 - m1), std::abs(k / grid.n1 - m2));
        }
    }
    return from_entries(std::move(entries), psd_tol);
}

CorrelationMatrix CorrelationMatrix::from_entries(Eigen::MatrixXd entries, double psd_tol) {
    if (entries.rows() != entries.cols() || entries.rows() == 0) {
        throw DomainError("correlation matrix must be square and non-empty");
    }
    if (!(psd_tol >= 0.0)) {
        throw DomainError("psd_tol must be nonnegative");
    }
    const Eigen::Index n = entries.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (entries(i, i) != 1.0) {
            throw DomainError("correlation matrix diagonal must be exactly 1");
        }
        for (Eigen::Index j = 0; j < i; ++j) {
            if (entries(i, j) != entries(j, i)) {
                throw DomainError("correlation matrix must be symmetric");
            }
        }
    }

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(entries);
    if (eig.info() != Eigen::Success) {
        throw NumericalError("eigendecomposition of the correlation matrix failed");
    }
    const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
    CorrelationMatrix out;
    out.min_eigenvalue_ = lambda(0);
    if (lambda(0) < -psd_tol) {
        std::ostringstream os;
        os << "correlation matrix is not positive semidefinite beyond tolerance: smallest eigenvalue "
           << lambda(0) << " < -" << psd_tol;
        throw NotPositiveSemidefinite(os.str());
    }

    const double cutoff = 1e-13 * std::max(lambda(n - 1), 1.0);
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (lambda(i) < 0.0) {
            ++out.clipped_;
        }
        if (lambda(i) > cutoff) {
            kept.push_back(i);
        }
    }
    out.factor_.resize(n, static_cast<Eigen::Index>(kept.size()));
    // Largest eigenvalues first.
    for (std::size_t c = 0; c < kept.size(); ++c) {
        const Eigen::Index i = kept[kept.size() - 1 - c];
        out.factor_.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(i) * std::sqrt(lambda(i));
    }
    out.entries_ = std::move(entries);
    return out;
}

double spacing_of(Compactness c) {
    switch (c) {
        case Compactness::non_compact: return 0.5;
        case Compactness::compact: return 0.1;
        case Compactness::very_compact: return 0.05;
    }
    throw DomainError("unknown compactness");
}

std::string_view short_name(Compactness c) {
    switch (c) {
        case Compactness::non_compact: return "NC";
        case Compactness::compact: return "C";
        case Compactness::very_compact: return "VC";
    }
    return "?";
}

std::span<const Preset> table_presets() {
    static const std::vector<Preset> presets = [] {
        constexpr double width_m = 0.15;
        constexpr double height_m = 0.08;
        constexpr std::array freqs{6e9, 26e9, 40e9};
        constexpr std::array cases{Compactness::non_compact, Compactness::compact,
                                   Compactness::very_compact};
        std::vector<Preset> out;
        for (double f : freqs) {
            for (Compactness c : cases) {
                std::ostringstream name;
                name << static_cast<int>(f / 1e9) << "GHz-" << short_name(c);
                out.push_back(Preset{name.str(), f, c,
                                     grid_from_aperture(width_m, height_m, f, spacing_of(c), 0.5)});
            }
        }
        return out;
    }();
    return presets;
}

const Preset& find_preset(std::string_view name) {
    for (const Preset& p : table_presets()) {
        if (p.name == name) {
            return p;
        }
    }
    throw DomainError("unknown preset '" + std::string(name) + "'");
}

}  // namespace cuma
