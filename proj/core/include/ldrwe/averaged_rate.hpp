#ifndef LDRWE_AVERAGED_RATE_HPP
#define LDRWE_AVERAGED_RATE_HPP

#include <Eigen/Dense>

#include "ldrwe/environment.hpp"
#include "ldrwe/geometry.hpp"
#include "ldrwe/step_set.hpp"

namespace ldrwe {

/// Value, gradient and Hessian of a log moment generating function at one tilt.
struct LogMgf {
    double value;
    Eigen::VectorXd gradient; ///< tilted mean step
    Eigen::MatrixXd hessian;  ///< tilted step covariance
};

/// One solved point of a rate function.
struct RateSolution {
    Eigen::VectorXd xi;
    Eigen::VectorXd rho;  ///< canonical representative in L of the dual class rho + L-perp
    double value;         ///< rate value, clamped to >= 0
    double residual;      ///< sup-norm of the L-projected stationarity residual
};

struct SolverOptions {
    double tol_newton = 1e-12;
    int max_iterations = 100;
};

/// log phi(rho) = log sum_z q(z) exp<rho,z>, with derivatives. Stable for
/// large tilts via a max-shift; zero-probability steps simply drop out.
LogMgf log_mgf(const Eigen::VectorXd& rho, const StepKernel& qhat, const StepSet& steps);

/// Mean step of the kernel.
Eigen::VectorXd lln_velocity(const StepKernel& qhat, const StepSet& steps);

/**
 * @brief Legendre transform of log phi at velocity xi.
 *
 * Solves grad log phi(rho) = xi by damped Newton iteration in L-coordinates,
 * where the restricted Hessian is positive definite. Requires xi in the
 * relative interior of the step hull and a strictly positive kernel; extreme
 * and boundary velocities are rejected.
 *
 * @throws NotInRelativeInterior, ZeroProbabilityStep, NonConvergence
 */
RateSolution rate_averaged(const Eigen::VectorXd& xi, const StepKernel& qhat,
                           const StepSet& steps, const Geometry& geom,
                           const SolverOptions& opts = {});

/// Exponentially tilted kernel q(z) exp(<rho,z>) / phi(rho).
StepKernel tilted_step_kernel(const Eigen::VectorXd& rho, const StepKernel& qhat,
                              const StepSet& steps);

} // namespace ldrwe

#endif // LDRWE_AVERAGED_RATE_HPP
