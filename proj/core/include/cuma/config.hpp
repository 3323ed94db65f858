#pragma once

#include "cuma/geometry.hpp"
#include "cuma/harness.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cuma {

inline constexpr int kConfigSchema = 1;

/// One scenario plus an optional sweep, as read from a YAML file.
///
///   schema: 1
///   preset: 6GHz-NC            # or grid: {n1: 7, n2: 4, w1: 3.0, w2: 1.6}
///   users: 20
///   delta: 1.0
///   eve: {preset: 6GHz-NC, delta: 1.0}
///   gamma_th: 1.0
///   rs: 1.0
///   trials: 100000
///   seed: 42
///   quad_tol: 1.0e-6
///   sweep:
///     recipe: fig2a            # or axis/values/metrics/series below
///     axis: users
///     values: [4, 8, 12]
///     metrics: [er, op]
///     series:
///       - {label: NC, preset: 6GHz-NC}
struct ScenarioConfig {
    std::string preset = "6GHz-NC";
    std::optional<PortGrid> grid;
    int users = 20;
    double delta = 1.0;
    double omega = 1.0;
    std::string eve_preset = "6GHz-NC";
    double delta_e = 1.0;
    double gamma_th = 1.0;
    double rs = 1.0;
    int trials = 100000;
    std::uint64_t seed = 1;
    double quad_tol = 1e-6;
    std::optional<SweepSpec> sweep;

    /// Explicit grid if given, otherwise the preset's.
    PortGrid bob_grid() const;
    void validate() const;
};

/// Throws DomainError for malformed YAML, a missing or unsupported schema, or
/// unknown keys.
ScenarioConfig parse_config(std::string_view yaml_text);
ScenarioConfig load_config(const std::string& path);

}  // namespace cuma
