#ifndef LDRWE_CONFIG_HPP
#define LDRWE_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ldrwe/environment.hpp"
#include "ldrwe/step_set.hpp"

namespace ldrwe {

/**
 * @brief One experiment: model, grids, horizons, sampling sizes, tolerances.
 *
 * Serialized as flat key = value text (TOML-compatible subset: integers,
 * floats, strings, nested arrays,
 * '#' comments). emit_config/parse_config round-trip exactly: numbers are
 * written with 17 significant digits.
 */
struct ExperimentConfig {
    int dim = 1;
    std::vector<LatticePoint> steps;
    std::string env_kind = "deterministic"; // deterministic | spatially-constant | spatial-iid-field
    std::vector<double> atom_weights;
    std::vector<std::vector<double>> atom_probs;
    std::uint64_t seed = 12345;

    std::vector<std::vector<double>> xi_grid; // optional explicit velocity grid
    std::vector<std::vector<double>> rho_grid;
    std::vector<int> horizons;

    std::int64_t replicas = 10000;
    double window_radius = 0.02;
    double tol_newton = 1e-12;
    double tol_identity = 1e-10;
    std::string format = "csv"; // csv | json

    StepSet make_step_set() const;
    EnvironmentSpec make_environment() const;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Parse the flat key = value format. Throws ConfigError naming the field.
ExperimentConfig parse_config(const std::string& text);

/// Canonical serialization; parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& config);

/// Built-in models: symmetric-binary, deterministic-uniform, square-2d, nn-3d.
ExperimentConfig preset(const std::string& name);
const std::vector<std::string>& preset_names();

/// Format a double with 17 significant digits (exact round-trip, C locale).
std::string format_double(double v);

} // namespace ldrwe

#endif // LDRWE_CONFIG_HPP
