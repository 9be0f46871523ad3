#ifndef LDRWE_PATH_ORACLE_HPP
#define LDRWE_PATH_ORACLE_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ldrwe/averaged_rate.hpp"
#include "ldrwe/environment.hpp"
#include "ldrwe/joint_law.hpp"
#include "ldrwe/step_set.hpp"

namespace ldrwe {

/// Cumulative cell budget for endpoint dynamic programming. Operations error
/// out rather than subsample when the budget would be exceeded.
inline constexpr std::int64_t kDpCellBudget = 100'000'000;

/**
 * @brief Exact law of the walk endpoint X_n, stored in log space.
 *
 * log_probs maps each reachable endpoint to log P(X_n = x). Probabilities at
 * n = 400 span hundreds of orders of magnitude under tilting, so all
 * accumulation is log-sum-exp.
 */
struct EndpointLaw {
    int horizon = 0;
    std::unordered_map<LatticePoint, double, LatticePointHash> log_probs;

    double prob(const LatticePoint& x) const;
    double log_prob(const LatticePoint& x) const; ///< -inf if unreachable
    /// Total mass (should be 1 up to round-off).
    double total_mass() const;
};

/// Closed sup-norm ball n * B(xi, radius) used for conditioning events.
struct VelocityWindow {
    Eigen::VectorXd xi;
    double radius = 0.02;

    bool contains(const LatticePoint& x, int n) const;
};

/// Exact forward DP for the averaged walk (i.i.d. steps with kernel qhat).
EndpointLaw endpoint_law(const StepKernel& qhat, const StepSet& steps, int n,
                         std::int64_t cell_budget = kDpCellBudget);

/// Exact forward DP for the quenched walk in one sampled environment.
EndpointLaw endpoint_law(const EnvironmentSample& env, const StepSet& steps, int n,
                         std::int64_t cell_budget = kDpCellBudget);

/// log P(X_n in n*B) from an endpoint law. Throws EmptyWindow if the window
/// captures no reachable endpoint.
double log_window_mass(const EndpointLaw& law, const VelocityWindow& window);

struct SlopePoint {
    int n;
    double slope; ///< -(1/n) log P(X_n in n*B)
};

/// Finite-n rate-function slopes from exact endpoint laws.
std::vector<SlopePoint> ldp_slope(const StepKernel& qhat, const StepSet& steps,
                                  const Eigen::VectorXd& xi, const std::vector<int>& n_grid,
                                  double window_radius);
std::vector<SlopePoint> ldp_slope(const EnvironmentSample& env, const StepSet& steps,
                                  const Eigen::VectorXd& xi, const std::vector<int>& n_grid,
                                  double window_radius);

/**
 * @brief Exact conditional law of (Z_1,...,Z_k) given X_n in n*B(xi, radius)
 * under the averaged walk.
 *
 * Enumerates the k-tuples and weighs each by the probability that the
 * remaining n-k steps land in the shifted window, using one endpoint law.
 *
 * @throws CapExceeded, EmptyWindow
 */
StepJointLaw conditional_first_steps(const StepKernel& qhat, const StepSet& steps, int n,
                                     const Eigen::VectorXd& xi, double window_radius, int k);

enum class EstimatorKind { Naive, Tilted };

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t replicas = 0;
    std::uint64_t seed = 0;
    EstimatorKind kind = EstimatorKind::Naive;
};

/**
 * @brief Monte Carlo estimate of P(X_n in n*B(xi, radius)) for the averaged
 * walk, by naive sampling or by exponential tilting toward xi.
 *
 * The tilted estimator samples steps from the xi-tilt of qhat and reweights
 * each path by exp(-<rho, X_n> + n log phi(rho)), computed in log space, so
 * it is unbiased for the same probability. Replica r draws from a stream
 * keyed by (seed, r); results do not depend on scheduling.
 */
MCEstimate importance_sample(const StepKernel& qhat, const StepSet& steps, const Geometry& geom,
                             int n, const Eigen::VectorXd& xi, double window_radius,
                             std::int64_t replicas, std::uint64_t seed,
                             EstimatorKind kind = EstimatorKind::Tilted);

struct ConcentrationPoint {
    int n;
    double mean_rate;      ///< empirical mean of log(u_n)/n
    double se_rate;        ///< standard error of that mean
    double tail_frequency; ///< empirical P(|log u_n - n*m1| >= n*eps)
};

struct ConcentrationReport {
    std::vector<ConcentrationPoint> points;
    double exact_mean_rate; ///< m1 = Lambda(rho) - log phi_a(rho)
    double epsilon;
    double fitted_log_slope; ///< least-squares slope of log(tail freq) vs n
};

/**
 * @brief Empirical concentration of log u_n for spatially constant
 * environments, where log u_n is an i.i.d. sum of log u_1(level).
 *
 * Tail events are centered at the exact mean n*(Lambda(rho)-log phi_a(rho)),
 * which is available in closed form for finite mixtures. The fitted slope is
 * computed over the grid points with nonzero tail frequency.
 *
 * @throws ZeroProbabilityStep
 */
ConcentrationReport log_un_concentration(const Eigen::VectorXd& rho, const KernelMixture& mixture,
                                         const StepSet& steps, const std::vector<int>& n_grid,
                                         std::int64_t replicas, double epsilon,
                                         std::uint64_t seed);

struct GapProbeRow {
    Eigen::VectorXd xi;
    double averaged_slope;
    double quenched_mean;
    double quenched_se;
    double gap;     ///< quenched_mean - averaged_slope
    double gap_sig; ///< gap / (3 * quenched_se); > 1 means significant at 3 sigma
};

/**
 * @brief Averaged-vs-quenched slope comparison for i.i.d. field environments.
 *
 * Exploratory: quenched slopes are DP-exact per sampled field, and the gap is
 * reported with its Monte Carlo spread over environment samples.
 *
 * @throws BudgetExceeded
 */
std::vector<GapProbeRow> dimension_gap_probe(const EnvironmentSpec& spec, const StepSet& steps,
                                             const std::vector<Eigen::VectorXd>& xi_list, int n,
                                             int env_samples, double window_radius);

} // namespace ldrwe

#endif // LDRWE_PATH_ORACLE_HPP
