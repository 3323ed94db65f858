#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cuma {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Rectangular fluid-antenna port layout: n1 x n2 ports spread uniformly over
/// an aperture of w1 x w2 wavelengths.
struct PortGrid {
    int n1 = 0;
    int n2 = 0;
    double w1 = 0.0;
    double w2 = 0.0;

    [[nodiscard]] int size() const noexcept { return n1 * n2; }

    friend bool operator==(const PortGrid&, const PortGrid&) = default;
};

/// Validating constructor (n1, n2 >= 2; w1, w2 > 0 and finite).
PortGrid make_grid(int n1, int n2, double w1, double w2);

/// Ports per dimension as floor(w / spacing) + 1, with the aperture converted to
/// wavelengths at `freq_hz`. Spacings are in wavelengths.
PortGrid grid_from_aperture(double width_m, double height_m, double freq_hz, double spacing1,
                            double spacing2);

/// 1-based grid coordinates of a port.
struct PortCoords {
    int n1 = 0;
    int n2 = 0;
    friend bool operator==(const PortCoords&, const PortCoords&) = default;
};

/// Maps the 1-based linear index k to (n1, n2); row-major along dimension 1.
PortCoords port_index_to_coords(int k, const PortGrid& grid);

/// Spherical Bessel j0(x) = sin(x)/x with j0(0) = 1.
double sinc_j0(double x);

/// Correlation as a function of the absolute grid offset between two ports.
double correlation_at_offset(int d1, int d2, const PortGrid& grid);

/// Isotropic-scattering correlation between 1-based ports k and m.
double correlation(int k, int m, const PortGrid& grid);

/// Dense port correlation matrix plus a square-root factor for correlated
/// sampling. Immutable once built.
class CorrelationMatrix {
public:
    /// Builds the N x N matrix for `grid` and repairs it: eigenvalues in
    /// [-psd_tol, 0) are clipped to zero, anything below -psd_tol throws
    /// NotPositiveSemidefinite.
    static CorrelationMatrix from_grid(const PortGrid& grid, double psd_tol = 1e-8);

    /// Same repair applied to an arbitrary symmetric matrix with unit diagonal.
    static CorrelationMatrix from_entries(Eigen::MatrixXd entries, double psd_tol = 1e-8);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    [[nodiscard]] const Eigen::MatrixXd& entries() const noexcept { return entries_; }

    /// N x r factor F with F F^T equal to the repaired matrix; r is the number
    /// of retained eigen-directions.
    [[nodiscard]] const Eigen::MatrixXd& factor() const noexcept { return factor_; }
    [[nodiscard]] int rank() const noexcept { return static_cast<int>(factor_.cols()); }

    [[nodiscard]] double min_eigenvalue() const noexcept { return min_eigenvalue_; }
    [[nodiscard]] int clipped_eigenvalues() const noexcept { return clipped_; }

private:
    CorrelationMatrix() = default;

    Eigen::MatrixXd entries_;
    Eigen::MatrixXd factor_;
    double min_eigenvalue_ = 0.0;
    int clipped_ = 0;
};

enum class Compactness { non_compact, compact, very_compact };

/// Minimum inter-port spacing (wavelengths) of a compactness case: 0.5, 0.1, 0.05.
double spacing_of(Compactness c);
std::string_view short_name(Compactness c);

/// A named frequency/compactness configuration from the parameter table
/// (15 cm x 8 cm aperture, dimension-2 spacing fixed at 0.5 wavelength).
struct Preset {
    std::string name;
    double freq_hz = 0.0;
    Compactness compactness = Compactness::non_compact;
    PortGrid grid;
};

/// The nine presets "6GHz-NC" ... "40GHz-VC" in frequency-major order.
std::span<const Preset> table_presets();

/// Looks a preset up by name; throws DomainError for unknown names.
const Preset& find_preset(std::string_view name);

}  // namespace cuma
