#ifndef LDRWE_DETAIL_LEGENDRE_HPP
#define LDRWE_DETAIL_LEGENDRE_HPP

#include <functional>

#include "ldrwe/averaged_rate.hpp"

namespace ldrwe::detail {

// Damped Newton Legendre solve of a smooth convex dual, shared between the
// averaged and quenched rate functions.
RateSolution legendre_solve_fn(const Eigen::VectorXd& xi, const StepSet& steps,
                               const Geometry& geom, const SolverOptions& opts,
                               const std::function<LogMgf(const Eigen::VectorXd&)>& eval);

} // namespace ldrwe::detail

#endif // LDRWE_DETAIL_LEGENDRE_HPP
