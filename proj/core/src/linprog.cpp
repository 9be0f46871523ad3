#include "ldrwe/linprog.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace ldrwe::linprog {

namespace {

// Tableau simplex on min c'x, Ax = b, x >= 0, with Bland's rule.
// Columns 0..n-1 are structural, the last column is the RHS.
class Tableau {
public:
    Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol)
        : m_(static_cast<int>(A.rows())), n_(static_cast<int>(A.cols())), tol_(tol) {
        t_.resize(m_ + 1, n_ + 1);
        t_.setZero();
        t_.block(0, 0, m_, n_) = A;
        t_.block(0, n_, m_, 1) = b;
        // nonnegative RHS
        for (int i = 0; i < m_; ++i) {
            if (t_(i, n_) < 0) t_.row(i) = -t_.row(i);
        }
        basis_.assign(static_cast<std::size_t>(m_), -1);
    }

    int rows() const { return m_; }
    int cols() const { return n_; }

    void set_objective(const Eigen::VectorXd& c) {
        t_.row(m_).head(n_) = c.transpose();
        t_(m_, n_) = 0.0;
        // price out the current basis
        for (int i = 0; i < m_; ++i) {
            int j = basis_[static_cast<std::size_t>(i)];
            if (j >= 0 && std::abs(t_(m_, j)) > 0) {
                t_.row(m_) -= t_(m_, j) * t_.row(i);
            }
        }
    }

    void make_basic(int row, int col) {
        double piv = t_(row, col);
        t_.row(row) /= piv;
        for (int i = 0; i <= m_; ++i) {
            if (i == row) continue;
            double f = t_(i, col);
            if (f != 0.0) t_.row(i) -= f * t_.row(row);
        }
        basis_[static_cast<std::size_t>(row)] = col;
    }

    // Returns false iff unbounded.
    bool iterate(int limit_col) {
        const int max_iters = 50 * (m_ + n_ + 10);
        for (int it = 0; it < max_iters; ++it) {
            // Bland: smallest-index entering column with negative reduced cost
            int enter = -1;
            for (int j = 0; j < limit_col; ++j) {
                if (t_(m_, j) < -tol_) { enter = j; break; }
            }
            if (enter < 0) return true;
            // ratio test, Bland tie-break on basis index
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m_; ++i) {
                if (t_(i, enter) > tol_) {
                    double r = t_(i, n_) / t_(i, enter);
                    if (r < best - 1e-15 ||
                        (r < best + 1e-15 && leave >= 0 &&
                         basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
                        best = r;
                        leave = i;
                    }
                }
            }
            if (leave < 0) return false;
            make_basic(leave, enter);
        }
        return true; // stalled; caller checks optimality via reduced costs
    }

    double rhs(int row) const { return t_(row, n_); }
    double objective_value() const { return -t_(m_, n_); }
    int basis(int row) const { return basis_[static_cast<std::size_t>(row)]; }
    double entry(int i, int j) const { return t_(i, j); }

    Eigen::VectorXd primal(int n_struct) const {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n_struct);
        for (int i = 0; i < m_; ++i) {
            int j = basis_[static_cast<std::size_t>(i)];
            if (j >= 0 && j < n_struct) x(j) = t_(i, n_);
        }
        return x;
    }

private:
    int m_, n_;
    double tol_;
    Eigen::MatrixXd t_;
    std::vector<int> basis_;
};

} // namespace

LpResult solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
               const Eigen::VectorXd& c, double tol) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());

    // Phase 1: artificial variables, minimize their sum.
    Eigen::MatrixXd A1(m, n + m);
    A1.setZero();
    A1.block(0, 0, m, n) = A;
    Eigen::VectorXd b1 = b;
    for (int i = 0; i < m; ++i) {
        double s = (b(i) < 0) ? -1.0 : 1.0;
        A1.block(i, 0, 1, n) *= s;
        b1(i) *= s;
        A1(i, n + i) = 1.0;
    }

    Tableau tab(A1, b1, tol);
    for (int i = 0; i < m; ++i) tab.make_basic(i, n + i);

    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(n + m);
    c1.tail(m).setOnes();
    tab.set_objective(c1);
    tab.iterate(n + m);

    if (tab.objective_value() > tol) {
        return {LpStatus::Infeasible, 0.0, {}};
    }

    // Drive leftover artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
        if (tab.basis(i) >= n) {
            for (int j = 0; j < n; ++j) {
                if (std::abs(tab.entry(i, j)) > tol) {
                    tab.make_basic(i, j);
                    break;
                }
            }
        }
    }

    // Phase 2 over structural columns only.
    Eigen::VectorXd c2 = Eigen::VectorXd::Zero(n + m);
    c2.head(n) = c;
    tab.set_objective(c2);
    if (!tab.iterate(n)) {
        return {LpStatus::Unbounded, 0.0, {}};
    }

    LpResult res;
    res.status = LpStatus::Optimal;
    res.solution = tab.primal(n);
    res.objective = c.dot(res.solution);
    return res;
}

} // namespace ldrwe::linprog
