#include "ldrwe/tilted_measures.hpp"

#include <cmath>
#include <limits>

#include "ldrwe/errors.hpp"

namespace ldrwe {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

LatticePoint add_step(const LatticePoint& x, const LatticePoint& z) {
    LatticePoint y = x;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += z[k];
    return y;
}

using SiteTable = std::unordered_map<LatticePoint, double, LatticePointHash>;

// Reachable site sets S_0,...,S_n from the origin.
std::vector<std::vector<LatticePoint>> reachable_sites(const StepSet& steps, int n) {
    std::vector<std::vector<LatticePoint>> sites(static_cast<std::size_t>(n) + 1);
    std::unordered_map<LatticePoint, char, LatticePointHash> seen;
    sites[0].push_back(LatticePoint(static_cast<std::size_t>(steps.dim()), 0));
    for (int i = 0; i < n; ++i) {
        seen.clear();
        for (const auto& x : sites[static_cast<std::size_t>(i)]) {
            for (int z = 0; z < steps.size(); ++z) {
                LatticePoint y = add_step(x, steps.step(z));
                if (seen.emplace(y, 1).second) sites[static_cast<std::size_t>(i) + 1].push_back(y);
            }
        }
    }
    return sites;
}

// log E^omega_x[e^<rho, X_n - x>] for every site needed at time `from`,
// walking the recursion backward from time n.
SiteTable backward_values(const Eigen::VectorXd& rho, const EnvironmentSample& env,
                          const StepSet& steps, int from, int n,
                          const std::vector<std::vector<LatticePoint>>& sites) {
    SiteTable next;
    for (const auto& x : sites[static_cast<std::size_t>(n)]) next[x] = 0.0;
    for (int i = n - 1; i >= from; --i) {
        SiteTable cur;
        for (const auto& x : sites[static_cast<std::size_t>(i)]) {
            const StepKernel& q = env.kernel_at(i, x);
            double acc = kNegInf;
            for (int z = 0; z < steps.size(); ++z) {
                if (q[z] <= 0.0) continue;
                auto it = next.find(add_step(x, steps.step(z)));
                double vnext = (it == next.end()) ? kNegInf : it->second;
                acc = log_add(acc, std::log(q[z]) + rho.dot(steps.step_vector(z)) + vnext);
            }
            cur[x] = acc;
        }
        next = std::move(cur);
    }
    return next;
}

} // namespace

StepJointLaw mu_xi_step_law(const Eigen::VectorXd& xi, const StepKernel& qhat,
                            const StepSet& steps, const Geometry& geom, int ell) {
    const int m = steps.size();
    if (ell < 1) throw ConfigError("ell", "tuple length must be at least 1");
    if (std::pow(static_cast<double>(m), ell) > kTupleCap)
        throw CapExceeded("tuple enumeration above the 10^6 cap");

    RateSolution sol = rate_averaged(xi, qhat, steps, geom);
    const double log_phi = log_mgf(sol.rho, qhat, steps).value;

    StepJointLaw law;
    law.horizon = ell;
    std::vector<int> tuple(static_cast<std::size_t>(ell), 0);
    while (true) {
        // defining expectation: averaged path weight times the tilt at X_ell
        double logw = -static_cast<double>(ell) * log_phi;
        Eigen::VectorXd x = Eigen::VectorXd::Zero(steps.dim());
        bool dead = false;
        for (int i = 0; i < ell && !dead; ++i) {
            double p = qhat[tuple[static_cast<std::size_t>(i)]];
            if (p <= 0.0) dead = true;
            else {
                logw += std::log(p);
                x += steps.step_vector(tuple[static_cast<std::size_t>(i)]);
            }
        }
        if (!dead) law.probs[tuple] = std::exp(logw + sol.rho.dot(x));

        int pos = ell - 1;
        while (pos >= 0 && ++tuple[static_cast<std::size_t>(pos)] == m) {
            tuple[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return law;
}

StepKernel alpha_kernel_n(const Eigen::VectorXd& rho, const EnvironmentSample& env,
                          const StepSet& steps, int n) {
    if (n < 1) throw ConfigError("n", "horizon must be at least 1");
    if (n > env.horizon()) throw HorizonExceeded("alpha_n horizon beyond sampled levels");
    auto sites = reachable_sites(steps, n);
    SiteTable v1 = backward_values(rho, env, steps, 1, n, sites);

    const StepKernel& pi0 = env.kernel_at(0, LatticePoint(static_cast<std::size_t>(steps.dim()), 0));
    const int m = steps.size();
    std::vector<double> log_num(static_cast<std::size_t>(m), kNegInf);
    double den = kNegInf;
    for (int z = 0; z < m; ++z) {
        if (pi0[z] <= 0.0) continue;
        auto it = v1.find(steps.step(z));
        double v = (it == v1.end()) ? kNegInf : it->second;
        log_num[static_cast<std::size_t>(z)] =
            std::log(pi0[z]) + rho.dot(steps.step_vector(z)) + v;
        den = log_add(den, log_num[static_cast<std::size_t>(z)]);
    }
    StepKernel alpha;
    alpha.probs.assign(static_cast<std::size_t>(m), 0.0);
    for (int z = 0; z < m; ++z) {
        if (log_num[static_cast<std::size_t>(z)] != kNegInf)
            alpha.probs[static_cast<std::size_t>(z)] = std::exp(log_num[static_cast<std::size_t>(z)] - den);
    }
    return alpha;
}

double kernel_alpha_n(const Eigen::VectorXd& rho, const EnvironmentSample& env,
                      const StepSet& steps, int n, int step_index) {
    return alpha_kernel_n(rho, env, steps, n)[step_index];
}

StepKernel sc_mu_kernel(const Eigen::VectorXd& rho, const StepKernel& kernel,
                        const StepSet& steps) {
    return tilted_step_kernel(rho, kernel, steps);
}

TiltedKernelFamily sc_nu_kernel(const Eigen::VectorXd& xi, const KernelMixture& mixture,
                                const StepSet& steps, const Geometry& geom) {
    RateSolution sol = rate_quenched(xi, mixture, steps, geom);
    TiltedKernelFamily fam;
    fam.rho = sol.rho;
    fam.atom_kernels.reserve(mixture.atoms.size());
    for (const auto& atom : mixture.atoms) {
        fam.atom_kernels.push_back(sc_mu_kernel(sol.rho, atom, steps));
    }
    return fam;
}

DoobData doob_residual(const Eigen::VectorXd& rho, const std::vector<EnvironmentSample>& windows,
                       int n, const EnvFunctional& u, const StepSet& steps) {
    DoobData data;
    const LatticePoint origin(static_cast<std::size_t>(steps.dim()), 0);
    for (const auto& env : windows) {
        StepKernel qhat = averaged_kernel(env.spec());
        const double log_phi = log_mgf(rho, qhat, steps).value;
        StepKernel alpha = alpha_kernel_n(rho, env, steps, n);
        const StepKernel& pi0 = env.kernel_at(0, origin);
        double u0 = u(env);
        if (!(u0 > 0.0)) throw NonpositiveU("Doob candidate must be positive");
        data.u_values.push_back(u0);
        for (int z = 0; z < steps.size(); ++z) {
            double uz = u(env.shifted(1, steps.step(z)));
            if (!(uz > 0.0)) throw NonpositiveU("Doob candidate must be positive");
            double rhs = pi0[z] * std::exp(rho.dot(steps.step_vector(z)) - log_phi) * uz / u0;
            data.residual = std::max(data.residual, std::abs(alpha[z] - rhs));
        }
    }
    return data;
}

double log_u_n_value(const Eigen::VectorXd& rho, const EnvironmentSample& env,
                     const StepSet& steps, int n) {
    if (n < 0) throw ConfigError("n", "horizon must be nonnegative");
    if (n == 0) return 0.0;
    if (n > env.horizon()) throw HorizonExceeded("u_n horizon beyond sampled levels");
    auto sites = reachable_sites(steps, n);
    SiteTable v0 = backward_values(rho, env, steps, 0, n, sites);
    StepKernel qhat = averaged_kernel(env.spec());
    const double log_phi = log_mgf(rho, qhat, steps).value;
    return v0.at(LatticePoint(static_cast<std::size_t>(steps.dim()), 0)) -
           static_cast<double>(n) * log_phi;
}

double u_n_value(const Eigen::VectorXd& rho, const EnvironmentSample& env,
                 const StepSet& steps, int n) {
    return std::exp(log_u_n_value(rho, env, steps, n));
}

std::unordered_map<LatticePoint, double, LatticePointHash>
log_u_n_by_endpoint(const Eigen::VectorXd& rho, const EnvironmentSample& env,
                    const StepSet& steps, int n) {
    if (n < 1) throw ConfigError("n", "horizon must be at least 1");
    if (n > env.horizon()) throw HorizonExceeded("u_n horizon beyond sampled levels");
    StepKernel qhat = averaged_kernel(env.spec());
    const double log_phi = log_mgf(rho, qhat, steps).value;

    SiteTable cur;
    cur.emplace(LatticePoint(static_cast<std::size_t>(steps.dim()), 0), 0.0);
    for (int i = 0; i < n; ++i) {
        SiteTable next;
        for (const auto& [x, logp] : cur) {
            const StepKernel& q = env.kernel_at(i, x);
            for (int z = 0; z < steps.size(); ++z) {
                if (q[z] <= 0.0) continue;
                double w = logp + std::log(q[z]) + rho.dot(steps.step_vector(z));
                LatticePoint y = add_step(x, steps.step(z));
                auto [it, fresh] = next.try_emplace(y, w);
                if (!fresh) it->second = log_add(it->second, w);
            }
        }
        cur = std::move(next);
    }
    for (auto& [x, v] : cur) v -= static_cast<double>(n) * log_phi;
    return cur;
}

} // namespace ldrwe
