#include "ldrwe/quenched_rate.hpp"

#include <cmath>

#include "ldrwe/detail/legendre.hpp"
#include "ldrwe/errors.hpp"

namespace ldrwe {

double w_of(const Eigen::VectorXd& rho, const StepKernel& kernel, const StepSet& steps) {
    double w = 0.0;
    for (int z = 0; z < steps.size(); ++z) {
        w += kernel[z] * std::exp(rho.dot(steps.step_vector(z)));
    }
    return w;
}

LogMgf lambda_quenched(const Eigen::VectorXd& rho, const KernelMixture& mixture,
                       const StepSet& steps) {
    if (!mixture.strictly_positive()) {
        throw ZeroProbabilityStep("quenched dual needs strictly positive atom kernels");
    }
    const int d = steps.dim();
    LogMgf out;
    out.value = 0.0;
    out.gradient = Eigen::VectorXd::Zero(d);
    out.hessian = Eigen::MatrixXd::Zero(d, d);
    for (int j = 0; j < mixture.size(); ++j) {
        LogMgf atom = log_mgf(rho, mixture.atoms[static_cast<std::size_t>(j)], steps);
        const double w = mixture.weights[static_cast<std::size_t>(j)];
        out.value += w * atom.value;
        out.gradient += w * atom.gradient;
        out.hessian += w * atom.hessian;
    }
    return out;
}

RateSolution rate_quenched(const Eigen::VectorXd& xi, const KernelMixture& mixture,
                           const StepSet& steps, const Geometry& geom,
                           const SolverOptions& opts) {
    if (!mixture.strictly_positive()) {
        throw ZeroProbabilityStep("quenched dual needs strictly positive atom kernels");
    }
    return detail::legendre_solve_fn(
        xi, steps, geom, opts,
        [&](const Eigen::VectorXd& rho) { return lambda_quenched(rho, mixture, steps); });
}

double jensen_gap(const Eigen::VectorXd& rho, const KernelMixture& mixture,
                  const StepSet& steps) {
    StepKernel qhat = averaged_kernel(mixture);
    double gap = log_mgf(rho, qhat, steps).value - lambda_quenched(rho, mixture, steps).value;
    return std::max(gap, 0.0);
}

} // namespace ldrwe
