#include "ldrwe/geometry.hpp"

#include <cmath>

#include "ldrwe/errors.hpp"
#include "ldrwe/linprog.hpp"

namespace ldrwe {

namespace {

// Feasibility of: lambda >= 0, sum lambda = 1, sum_i lambda_i * cols(i) = target,
// over the given columns expressed in L-coordinates.
bool convex_combination_exists(const Eigen::MatrixXd& cols_l, const Eigen::VectorXd& target_l,
                               double tol) {
    const int r = static_cast<int>(cols_l.rows());
    const int m = static_cast<int>(cols_l.cols());
    Eigen::MatrixXd A(r + 1, m);
    A.topRows(r) = cols_l;
    A.bottomRows(1).setOnes();
    Eigen::VectorXd b(r + 1);
    b.head(r) = target_l;
    b(r) = 1.0;
    auto res = linprog::solve(A, b, Eigen::VectorXd::Zero(m), tol);
    return res.status == linprog::LpStatus::Optimal;
}

} // namespace

Geometry Geometry::build(const StepSet& steps) {
    return build(steps, Tolerances{});
}

Geometry Geometry::build(const StepSet& steps, const Tolerances& tol) {
    Geometry g;
    g.tol_ = tol;
    const int d = steps.dim();
    const int m = steps.size();
    g.base_point_ = steps.step_vector(0);

    // Orthonormal bases of L and L-perp via column-pivoted QR of {z - z0}.
    Eigen::MatrixXd diffs(d, m - 1);
    for (int j = 1; j < m; ++j) diffs.col(j - 1) = steps.step_vector(j) - g.base_point_;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(diffs);
    qr.setThreshold(tol.rank);
    const int rank = static_cast<int>(qr.rank());
    Eigen::MatrixXd q = qr.householderQ();
    g.l_basis_ = q.leftCols(rank);
    g.lperp_basis_ = q.rightCols(d - rank);

    // A step is extreme iff it is not a convex combination of the others.
    for (int j = 0; j < m; ++j) {
        Eigen::MatrixXd others_l(rank, m - 1);
        int k = 0;
        for (int i = 0; i < m; ++i) {
            if (i == j) continue;
            others_l.col(k++) = g.l_basis_.transpose() * (steps.step_vector(i) - g.base_point_);
        }
        Eigen::VectorXd target_l = g.l_basis_.transpose() * (steps.step_vector(j) - g.base_point_);
        if (!convex_combination_exists(others_l, target_l, 1e-9)) {
            g.extreme_.push_back(j);
        }
    }
    return g;
}

Eigen::VectorXd Geometry::project_tilt(const Eigen::VectorXd& rho) const {
    return l_basis_ * (l_basis_.transpose() * rho);
}

Eigen::VectorXd Geometry::to_l_coords(const Eigen::VectorXd& v) const {
    return l_basis_.transpose() * v;
}

Eigen::VectorXd Geometry::from_l_coords(const Eigen::VectorXd& coords) const {
    return l_basis_ * coords;
}

double Geometry::affine_residual(const Eigen::VectorXd& xi) const {
    Eigen::VectorXd v = xi - base_point_;
    return (v - l_basis_ * (l_basis_.transpose() * v)).norm();
}

bool in_relative_interior(const Eigen::VectorXd& xi, const Geometry& geom, const StepSet& steps) {
    if (geom.affine_residual(xi) > geom.tolerances().affine) return false;

    // maximize t subject to: lambda_i - t - s_i = 0, sum lambda = 1,
    // sum lambda_i z_i = xi (in L-coordinates); lambda, t, s >= 0.
    const int m = steps.size();
    const int r = geom.hull_dim();
    const int nvar = m + 1 + m; // lambda, t, surplus
    const int nrow = m + 1 + r;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nrow, nvar);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(nrow);
    for (int i = 0; i < m; ++i) {
        A(i, i) = 1.0;
        A(i, m) = -1.0;
        A(i, m + 1 + i) = -1.0;
    }
    A.row(m).head(m).setOnes();
    b(m) = 1.0;
    Eigen::VectorXd xi_l = geom.to_l_coords(xi - geom.base_point());
    for (int i = 0; i < m; ++i) {
        Eigen::VectorXd zi_l = geom.to_l_coords(steps.step_vector(i) - geom.base_point());
        for (int k = 0; k < r; ++k) A(m + 1 + k, i) = zi_l(k);
    }
    for (int k = 0; k < r; ++k) b(m + 1 + k) = xi_l(k);

    Eigen::VectorXd c = Eigen::VectorXd::Zero(nvar);
    c(m) = -1.0; // maximize t
    auto res = linprog::solve(A, b, c, 1e-10);
    if (res.status != linprog::LpStatus::Optimal) return false;
    return -res.objective >= geom.tolerances().min_weight;
}

} // namespace ldrwe
