#ifndef LDRWE_QUENCHED_RATE_HPP
#define LDRWE_QUENCHED_RATE_HPP

#include "ldrwe/averaged_rate.hpp"

namespace ldrwe {

/// One-step tilted mass W(rho, q) = sum_z q(z) exp<rho,z> of a single kernel.
double w_of(const Eigen::VectorXd& rho, const StepKernel& kernel, const StepSet& steps);

/**
 * @brief Quenched dual for spatially constant environments:
 * Lambda(rho) = sum_j w_j log W(rho, q_j), with gradient and Hessian.
 *
 * All atom kernels must be strictly positive; otherwise log W and its
 * derivatives degenerate at extreme tilts.
 *
 * @throws ZeroProbabilityStep
 */
LogMgf lambda_quenched(const Eigen::VectorXd& rho, const KernelMixture& mixture,
                       const StepSet& steps);

/**
 * @brief Legendre transform of the quenched dual at velocity xi.
 *
 * Same subdifferential geometry as the averaged solve: the dual class is
 * rho + L-perp, and the Newton iteration runs in L-coordinates.
 *
 * @throws NotInRelativeInterior, ZeroProbabilityStep, NonConvergence
 */
RateSolution rate_quenched(const Eigen::VectorXd& xi, const KernelMixture& mixture,
                           const StepSet& steps, const Geometry& geom,
                           const SolverOptions& opts = {});

/// log phi_a(rho) - Lambda(rho) >= 0; strictly positive unless the mixture is
/// degenerate in the direction rho (see degeneracy_check).
double jensen_gap(const Eigen::VectorXd& rho, const KernelMixture& mixture,
                  const StepSet& steps);

} // namespace ldrwe

#endif // LDRWE_QUENCHED_RATE_HPP
