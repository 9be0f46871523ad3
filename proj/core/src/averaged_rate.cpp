#include "ldrwe/averaged_rate.hpp"

#include <cmath>
#include <limits>

#include "ldrwe/detail/legendre.hpp"
#include "ldrwe/errors.hpp"

namespace ldrwe {

LogMgf log_mgf(const Eigen::VectorXd& rho, const StepKernel& qhat, const StepSet& steps) {
    const int m = steps.size();
    const int d = steps.dim();

    // max-shifted exponentials for stability at large tilts
    double shift = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd dots(m);
    for (int z = 0; z < m; ++z) {
        dots(z) = rho.dot(steps.step_vector(z));
        if (qhat[z] > 0.0) shift = std::max(shift, dots(z));
    }
    double mass = 0.0;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
    for (int z = 0; z < m; ++z) {
        if (qhat[z] <= 0.0) continue;
        w(z) = qhat[z] * std::exp(dots(z) - shift);
        mass += w(z);
    }
    w /= mass;

    LogMgf out;
    out.value = shift + std::log(mass);
    out.gradient = Eigen::VectorXd::Zero(d);
    for (int z = 0; z < m; ++z) out.gradient += w(z) * steps.step_vector(z);
    out.hessian = Eigen::MatrixXd::Zero(d, d);
    for (int z = 0; z < m; ++z) {
        Eigen::VectorXd c = steps.step_vector(z) - out.gradient;
        out.hessian += w(z) * (c * c.transpose());
    }
    return out;
}

Eigen::VectorXd lln_velocity(const StepKernel& qhat, const StepSet& steps) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(steps.dim());
    for (int z = 0; z < steps.size(); ++z) v += qhat[z] * steps.step_vector(z);
    return v;
}

namespace {

// Shared damped-Newton driver for smooth strictly convex duals restricted to
// L-coordinates. `eval` returns the LogMgf-like data of the dual function.
template <typename Eval>
RateSolution legendre_solve(const Eigen::VectorXd& xi, const StepSet& steps,
                            const Geometry& geom, const SolverOptions& opts, Eval&& eval) {
    if (!in_relative_interior(xi, geom, steps)) {
        throw NotInRelativeInterior("velocity is not in the relative interior of the step hull");
    }
    const Eigen::MatrixXd& basis = geom.l_basis();
    const int r = geom.hull_dim();

    Eigen::VectorXd theta = Eigen::VectorXd::Zero(r);
    LogMgf cur = eval(basis * theta);
    double obj = cur.value - (basis * theta).dot(xi);

    for (int it = 0; it < opts.max_iterations; ++it) {
        Eigen::VectorXd grad = basis.transpose() * (cur.gradient - xi);
        if (grad.lpNorm<Eigen::Infinity>() <= opts.tol_newton) {
            Eigen::VectorXd rho = basis * theta;
            RateSolution sol;
            sol.xi = xi;
            sol.rho = rho;
            sol.value = std::max(rho.dot(xi) - cur.value, 0.0);
            sol.residual = grad.lpNorm<Eigen::Infinity>();
            return sol;
        }
        Eigen::MatrixXd hess = basis.transpose() * cur.hessian * basis;
        Eigen::LLT<Eigen::MatrixXd> llt(hess);
        Eigen::VectorXd step;
        if (llt.info() == Eigen::Success) {
            step = llt.solve(-grad);
        } else {
            step = -grad; // gradient fallback near-degenerate Hessians
        }
        double slope = grad.dot(step);
        if (-slope <= 1e-9) {
            // quadratic basin: objective decrements are below round-off, so
            // backtracking cannot certify progress; the full Newton step is safe
            theta += step;
            cur = eval(basis * theta);
            obj = cur.value - (basis * theta).dot(xi);
            continue;
        }
        // Armijo backtracking on the dual objective
        double t = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls) {
            Eigen::VectorXd cand = theta + t * step;
            LogMgf trial = eval(basis * cand);
            double trial_obj = trial.value - (basis * cand).dot(xi);
            if (trial_obj <= obj + 1e-4 * t * slope) {
                theta = cand;
                cur = trial;
                obj = trial_obj;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) {
            theta += step;
            cur = eval(basis * theta);
            obj = cur.value - (basis * theta).dot(xi);
        }
    }
    throw NonConvergence("Newton iteration did not reach tolerance");
}

} // namespace

RateSolution rate_averaged(const Eigen::VectorXd& xi, const StepKernel& qhat,
                           const StepSet& steps, const Geometry& geom,
                           const SolverOptions& opts) {
    if (!qhat.strictly_positive()) {
        throw ZeroProbabilityStep("averaged kernel must charge every step");
    }
    return legendre_solve(xi, steps, geom, opts,
                          [&](const Eigen::VectorXd& rho) { return log_mgf(rho, qhat, steps); });
}

StepKernel tilted_step_kernel(const Eigen::VectorXd& rho, const StepKernel& qhat,
                              const StepSet& steps) {
    const int m = steps.size();
    double shift = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd dots(m);
    for (int z = 0; z < m; ++z) {
        dots(z) = rho.dot(steps.step_vector(z));
        if (qhat[z] > 0.0) shift = std::max(shift, dots(z));
    }
    StepKernel out;
    out.probs.assign(static_cast<std::size_t>(m), 0.0);
    double mass = 0.0;
    for (int z = 0; z < m; ++z) {
        if (qhat[z] <= 0.0) continue;
        out.probs[static_cast<std::size_t>(z)] = qhat[z] * std::exp(dots(z) - shift);
        mass += out.probs[static_cast<std::size_t>(z)];
    }
    for (auto& p : out.probs) p /= mass;
    return out;
}

namespace detail {
RateSolution legendre_solve_fn(const Eigen::VectorXd& xi, const StepSet& steps,
                               const Geometry& geom, const SolverOptions& opts,
                               const std::function<LogMgf(const Eigen::VectorXd&)>& eval) {
    return legendre_solve(xi, steps, geom, opts, eval);
}
} // namespace detail

} // namespace ldrwe
