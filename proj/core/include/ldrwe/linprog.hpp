#ifndef LDRWE_LINPROG_HPP
#define LDRWE_LINPROG_HPP

#include <Eigen/Dense>

namespace ldrwe::linprog {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status;
    double objective = 0.0;       // valid when status == Optimal
    Eigen::VectorXd solution;     // primal point, valid when status == Optimal
};

/**
 * @brief Solve min c'x subject to A x = b, x >= 0.
 *
 * Dense two-phase simplex with Bland's rule. Intended for the small
 * feasibility problems of the step-set geometry (tens of variables);
 * redundant but consistent equality rows are tolerated.
 */
LpResult solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
               const Eigen::VectorXd& c, double tol = 1e-9);

} // namespace ldrwe::linprog

#endif // LDRWE_LINPROG_HPP
