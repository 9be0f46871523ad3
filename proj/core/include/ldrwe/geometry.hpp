#ifndef LDRWE_GEOMETRY_HPP
#define LDRWE_GEOMETRY_HPP

#include <Eigen/Dense>
#include <vector>

#include "ldrwe/step_set.hpp"

namespace ldrwe {

/**
 * @brief Convex-geometric data of a step set.
 *
 * Holds an orthonormal basis of the tangent space L of the affine hull of
 * the steps, an orthonormal basis of its orthogonal complement, the hull
 * dimension, and the extreme points of the convex hull. Tilt vectors are
 * identified modulo L-perp, so every dual solve works in L-coordinates and
 * reports the canonical representative inside L.
 *
 * Immutable after construction; safe to share across threads.
 */
class Geometry {
public:
    /// Default tolerances: rank cut for the orthonormalization, affine-hull
    /// membership, and the minimum convex weight defining "relative interior".
    struct Tolerances {
        double rank = 1e-10;
        double affine = 1e-9;
        double min_weight = 1e-9;
    };

    static Geometry build(const StepSet& steps);
    static Geometry build(const StepSet& steps, const Tolerances& tol);

    int dim() const { return static_cast<int>(l_basis_.rows()); }
    int hull_dim() const { return static_cast<int>(l_basis_.cols()); }

    /// Orthonormal basis of L = span{z - z0}, one column per basis vector.
    const Eigen::MatrixXd& l_basis() const { return l_basis_; }
    /// Orthonormal basis of the orthogonal complement of L.
    const Eigen::MatrixXd& lperp_basis() const { return lperp_basis_; }

    const Eigen::VectorXd& base_point() const { return base_point_; }

    /// Indices (into the step list) of the extreme points of the hull.
    const std::vector<int>& extreme_points() const { return extreme_; }

    /// Component of rho in L: the canonical representative of rho + L-perp.
    Eigen::VectorXd project_tilt(const Eigen::VectorXd& rho) const;

    /// Coordinates of the L-component of v in the l_basis frame.
    Eigen::VectorXd to_l_coords(const Eigen::VectorXd& v) const;
    Eigen::VectorXd from_l_coords(const Eigen::VectorXd& coords) const;

    /// Distance from xi to the affine hull of the steps.
    double affine_residual(const Eigen::VectorXd& xi) const;

    const Tolerances& tolerances() const { return tol_; }

private:
    Eigen::MatrixXd l_basis_;
    Eigen::MatrixXd lperp_basis_;
    Eigen::VectorXd base_point_;
    std::vector<int> extreme_;
    Tolerances tol_;
};

/**
 * @brief Membership of xi in the relative interior of the step hull.
 *
 * True iff xi lies on the affine hull (residual below the affine tolerance)
 * and admits convex weights over the steps with minimum weight at least the
 * min-weight tolerance; the weights are found by a linear program that
 * maximizes the minimum weight.
 */
bool in_relative_interior(const Eigen::VectorXd& xi, const Geometry& geom, const StepSet& steps);

} // namespace ldrwe

#endif // LDRWE_GEOMETRY_HPP
