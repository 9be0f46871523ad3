#ifndef LDRWE_TILTED_MEASURES_HPP
#define LDRWE_TILTED_MEASURES_HPP

#include <functional>
#include <unordered_map>
#include <vector>

#include "ldrwe/averaged_rate.hpp"
#include "ldrwe/environment.hpp"
#include "ldrwe/geometry.hpp"
#include "ldrwe/joint_law.hpp"
#include "ldrwe/quenched_rate.hpp"

namespace ldrwe {

/// Tuple-enumeration cap for joint step laws.
inline constexpr double kTupleCap = 1e6;

/// Tilted kernel per mixture atom, together with the tilt that produced it.
struct TiltedKernelFamily {
    Eigen::VectorXd rho;
    std::vector<StepKernel> atom_kernels; ///< aligned with the mixture atoms
};

/// Positive functional of an environment window, e.g. a Doob h-candidate.
using EnvFunctional = std::function<double(const EnvironmentSample&)>;

/// Doob-transform diagnostic: candidate values per window and the worst
/// kernel mismatch across windows and steps.
struct DoobData {
    std::vector<double> u_values;
    double residual = 0.0;
};

/**
 * @brief Finite-dimensional step marginal of the averaged-contraction
 * minimizer at velocity xi.
 *
 * Each tuple probability is evaluated from the defining tilted expectation
 * over the averaged walk; the product structure across slabs is a theorem
 * about this law, not an assumption of the computation.
 *
 * @throws NotInRelativeInterior, CapExceeded
 */
StepJointLaw mu_xi_step_law(const Eigen::VectorXd& xi, const StepKernel& qhat,
                            const StepSet& steps, const Geometry& geom, int ell);

/**
 * @brief Finite-n approximant of the minimizer's Markov kernel in one
 * environment realization:
 * alpha_n(omega, .) proportional to pi(0, z | omega) e^<rho,z> E^{shifted}[e^<rho,X_{n-1}>].
 *
 * Exact backward dynamic programming over reachable sites. For spatially
 * constant environments alpha_n does not depend on n.
 */
StepKernel alpha_kernel_n(const Eigen::VectorXd& rho, const EnvironmentSample& env,
                          const StepSet& steps, int n);

/// Single entry of alpha_kernel_n.
double kernel_alpha_n(const Eigen::VectorXd& rho, const EnvironmentSample& env,
                      const StepSet& steps, int n, int step_index);

/// Closed-form minimizer kernel for one constant-environment level:
/// q(z) e^<rho,z> / W(rho, q).
StepKernel sc_mu_kernel(const Eigen::VectorXd& rho, const StepKernel& kernel,
                        const StepSet& steps);

/**
 * @brief Quenched-contraction minimizer kernels for a constant environment:
 * per-atom tilts at the tilt solving the quenched (not averaged) dual.
 *
 * @throws NotInRelativeInterior, ZeroProbabilityStep, NonConvergence
 */
TiltedKernelFamily sc_nu_kernel(const Eigen::VectorXd& xi, const KernelMixture& mixture,
                                const StepSet& steps, const Geometry& geom);

/**
 * @brief Worst deviation of the finite-n minimizer kernel from a Doob
 * transform of the original kernel with candidate function u.
 *
 * For each supplied environment window, compares alpha_n(omega, z) against
 * pi(0, z | omega) e^<rho,z> / phi_a(rho) * u(T_{1,z} omega) / u(omega).
 *
 * @throws NonpositiveU, HorizonExceeded
 */
DoobData doob_residual(const Eigen::VectorXd& rho, const std::vector<EnvironmentSample>& windows,
                       int n, const EnvFunctional& u, const StepSet& steps);

/// log u_n(rho, omega) = log E^omega[e^{<rho,X_n> - n log phi_a(rho)}] by DP.
double log_u_n_value(const Eigen::VectorXd& rho, const EnvironmentSample& env,
                     const StepSet& steps, int n);
double u_n_value(const Eigen::VectorXd& rho, const EnvironmentSample& env,
                 const StepSet& steps, int n);

/// Endpoint decomposition x -> log u_n(rho, omega, x); marginalizing over x
/// recovers log_u_n_value.
std::unordered_map<LatticePoint, double, LatticePointHash>
log_u_n_by_endpoint(const Eigen::VectorXd& rho, const EnvironmentSample& env,
                    const StepSet& steps, int n);

} // namespace ldrwe

#endif // LDRWE_TILTED_MEASURES_HPP
