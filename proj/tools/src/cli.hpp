#ifndef LDRWE_CLI_HPP
#define LDRWE_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

#include "ldrwe/config.hpp"
#include "ldrwe/environment.hpp"
#include "ldrwe/geometry.hpp"

namespace ldrwe::cli {

/**
 * @brief Entry point shared by the binary and the tests.
 *
 * Subcommands: rate-curve, tilt, entropy-decompose, simulate, is-estimate,
 * ldp-slope, concentration, dim-probe, verify.
 *
 * Exit codes: 0 success; 2 configuration error (message names the offending
 * field); 1 numerical failure (non-convergence, budget, empty window) or a
 * failed verify identity.
 */
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Config + derived model objects shared by every subcommand.
struct Model {
    ExperimentConfig cfg;
    StepSet steps;
    Geometry geom;
    EnvironmentSpec env;
    StepKernel qhat;

    explicit Model(const ExperimentConfig& c);
};

/// 21-point velocity segment through the relative interior, from 90% toward
/// one farthest extreme point to 90% toward the other.
std::vector<Eigen::VectorXd> default_xi_grid(const Model& model, int count = 21);

/// Identity-suite entry: one named check with both sides and a bound.
struct CheckResult {
    std::string name;
    double lhs;
    double rhs;
    double residual;
    double tol;
    bool geq;  ///< true when the check is residual >= tol instead of <=
    bool pass;
};

/// The full identity suite for one model (used by `verify`).
std::vector<CheckResult> verify_suite(const Model& model);

} // namespace ldrwe::cli

#endif // LDRWE_CLI_HPP
