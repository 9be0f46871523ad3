#ifndef LDRWE_ENTROPY_HPP
#define LDRWE_ENTROPY_HPP

#include "ldrwe/averaged_rate.hpp"
#include "ldrwe/environment.hpp"
#include "ldrwe/geometry.hpp"

namespace ldrwe {

/**
 * @brief Relative entropy of two kernels on the step alphabet.
 *
 * Conventions: 0 log 0 = 0; if p charges a q-null step the result is the
 * IEEE +infinity value (exact, never an overflow artifact).
 */
double rel_entropy(const StepKernel& p, const StepKernel& q);

/// Entropy split of one solved velocity for a constant environment.
struct EntropyReport {
    Eigen::VectorXd xi;
    Eigen::VectorXd rho;     ///< averaged-dual tilt (canonical representative)
    double h_env;            ///< specific entropy of the environment marginal
    double h_q;              ///< conditional-kernel entropy, computed directly
    double sum;              ///< h_env + h_q
    double i_avg;            ///< averaged rate at xi
    double i_quenched;       ///< quenched rate at xi
    double residual;         ///< |sum - i_avg|
};

/**
 * @brief Entropy decomposition of the averaged rate at xi for a constant
 * environment.
 *
 * h_env is the closed form E[u_1 log u_1] with u_1 = W(rho, .)/phi_a(rho).
 * h_q is computed by the independent route: the mean conditional-kernel
 * entropy of the minimizer's kernels against the environment kernels, with
 * the environment marginal tilted by u_1. The residual |h_env + h_q - i_avg|
 * is therefore a genuine cross-check, not an algebraic identity of the code.
 *
 * @throws NotInRelativeInterior, ZeroProbabilityStep, NonConvergence
 */
EntropyReport sc_entropy_decomposition(const Eigen::VectorXd& xi, const KernelMixture& mixture,
                                       const StepSet& steps, const Geometry& geom);

/**
 * @brief Conditional-kernel entropy of the quenched-contraction minimizer:
 * mixture mean of rel_entropy(nu-kernel_j, q_j) at the quenched tilt.
 *
 * Equals the quenched rate at xi; the acceptance suite asserts the match.
 */
double hq_nu(const Eigen::VectorXd& xi, const KernelMixture& mixture, const StepSet& steps,
             const Geometry& geom);

/**
 * @brief (1/n) x relative entropy of the minimizer's n-step law against the
 * averaged walk's n-step law, by tuple enumeration.
 *
 * Independent of n (exactly linear in n), and equal to the averaged rate.
 *
 * @throws CapExceeded
 */
double finite_n_specific_entropy(const Eigen::VectorXd& xi, const StepKernel& qhat,
                                 const StepSet& steps, const Geometry& geom, int n);

} // namespace ldrwe

#endif // LDRWE_ENTROPY_HPP
