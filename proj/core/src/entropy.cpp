#include "ldrwe/entropy.hpp"

#include <cmath>
#include <limits>

#include "ldrwe/errors.hpp"
#include "ldrwe/quenched_rate.hpp"
#include "ldrwe/tilted_measures.hpp"

namespace ldrwe {

double rel_entropy(const StepKernel& p, const StepKernel& q) {
    double h = 0.0;
    for (std::size_t z = 0; z < p.probs.size(); ++z) {
        double pz = p.probs[z];
        if (pz == 0.0) continue;
        double qz = q.probs[z];
        if (qz == 0.0) return std::numeric_limits<double>::infinity();
        h += pz * std::log(pz / qz);
    }
    return std::max(h, 0.0);
}

EntropyReport sc_entropy_decomposition(const Eigen::VectorXd& xi, const KernelMixture& mixture,
                                       const StepSet& steps, const Geometry& geom) {
    if (!mixture.strictly_positive()) {
        throw ZeroProbabilityStep("entropy decomposition needs strictly positive atoms");
    }
    StepKernel qhat = averaged_kernel(mixture);
    RateSolution avg = rate_averaged(xi, qhat, steps, geom);
    const double log_phi = log_mgf(avg.rho, qhat, steps).value;

    double h_env = 0.0;
    double h_q = 0.0;
    for (int j = 0; j < mixture.size(); ++j) {
        const auto& atom = mixture.atoms[static_cast<std::size_t>(j)];
        const double w = mixture.weights[static_cast<std::size_t>(j)];
        const double u1 = w_of(avg.rho, atom, steps) / std::exp(log_phi);
        h_env += w * u1 * std::log(u1);
        // environment marginal of the minimizer is the u_1-tilt of the mixture
        h_q += w * u1 * rel_entropy(sc_mu_kernel(avg.rho, atom, steps), atom);
    }

    EntropyReport rep;
    rep.xi = xi;
    rep.rho = avg.rho;
    rep.h_env = h_env;
    rep.h_q = h_q;
    rep.sum = h_env + h_q;
    rep.i_avg = avg.value;
    rep.i_quenched = rate_quenched(xi, mixture, steps, geom).value;
    rep.residual = std::abs(rep.sum - rep.i_avg);
    return rep;
}

double hq_nu(const Eigen::VectorXd& xi, const KernelMixture& mixture, const StepSet& steps,
             const Geometry& geom) {
    TiltedKernelFamily fam = sc_nu_kernel(xi, mixture, steps, geom);
    double h = 0.0;
    for (int j = 0; j < mixture.size(); ++j) {
        h += mixture.weights[static_cast<std::size_t>(j)] *
             rel_entropy(fam.atom_kernels[static_cast<std::size_t>(j)],
                         mixture.atoms[static_cast<std::size_t>(j)]);
    }
    return h;
}

double finite_n_specific_entropy(const Eigen::VectorXd& xi, const StepKernel& qhat,
                                 const StepSet& steps, const Geometry& geom, int n) {
    StepJointLaw law = mu_xi_step_law(xi, qhat, steps, geom, n);
    double h = 0.0;
    for (const auto& [tuple, p] : law.probs) {
        if (p <= 0.0) continue;
        double logq = 0.0;
        for (int idx : tuple) logq += std::log(qhat[idx]);
        h += p * (std::log(p) - logq);
    }
    return std::max(h, 0.0) / static_cast<double>(n);
}

} // namespace ldrwe
