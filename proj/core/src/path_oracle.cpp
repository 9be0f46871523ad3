#include "ldrwe/path_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "ldrwe/errors.hpp"
#include "ldrwe/quenched_rate.hpp"
#include "ldrwe/rng.hpp"

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

// Forward DP driver; `kernel_of(i, x)` supplies the step kernel at each cell.
// The cell budget counts distinct (time, site) states ever created and is
// checked during expansion, before memory can blow up.
template <typename KernelOf>
EndpointLaw run_dp(const StepSet& steps, int n, std::int64_t cell_budget, KernelOf&& kernel_of) {
    if (n < 1) throw ConfigError("n", "horizon must be at least 1");
    const int m = steps.size();
    EndpointLaw law;
    law.horizon = n;
    std::unordered_map<LatticePoint, double, LatticePointHash> cur;
    cur.emplace(LatticePoint(static_cast<std::size_t>(steps.dim()), 0), 0.0);
    std::int64_t cells = 1;
    for (int i = 0; i < n; ++i) {
        std::unordered_map<LatticePoint, double, LatticePointHash> next;
        for (const auto& [x, logp] : cur) {
            const StepKernel& q = kernel_of(i, x);
            for (int z = 0; z < m; ++z) {
                double pz = q[z];
                if (pz <= 0.0) continue;
                auto [it, fresh] = next.try_emplace(add_step(x, steps.step(z)), logp + std::log(pz));
                if (!fresh) {
                    it->second = log_add(it->second, logp + std::log(pz));
                } else if (++cells > cell_budget) {
                    throw BudgetExceeded("endpoint DP exceeds the cell budget");
                }
            }
        }
        cur = std::move(next);
    }
    law.log_probs = std::move(cur);
    return law;
}

std::vector<SlopePoint> slopes_from(const std::vector<int>& n_grid, const Eigen::VectorXd& xi,
                                    double radius,
                                    const std::function<EndpointLaw(int)>& law_of) {
    std::vector<SlopePoint> out;
    out.reserve(n_grid.size());
    for (int n : n_grid) {
        EndpointLaw law = law_of(n);
        VelocityWindow w{xi, radius};
        out.push_back({n, -log_window_mass(law, w) / static_cast<double>(n)});
    }
    return out;
}

} // namespace

double EndpointLaw::prob(const LatticePoint& x) const {
    auto it = log_probs.find(x);
    return it == log_probs.end() ? 0.0 : std::exp(it->second);
}

double EndpointLaw::log_prob(const LatticePoint& x) const {
    auto it = log_probs.find(x);
    return it == log_probs.end() ? kNegInf : it->second;
}

double EndpointLaw::total_mass() const {
    double acc = kNegInf;
    for (const auto& [x, logp] : log_probs) acc = log_add(acc, logp);
    return std::exp(acc);
}

bool VelocityWindow::contains(const LatticePoint& x, int n) const {
    // closed ball with a round-off guard on the boundary
    const double bound = static_cast<double>(n) * radius + 1e-9;
    for (std::size_t k = 0; k < x.size(); ++k) {
        double diff = static_cast<double>(x[k]) - static_cast<double>(n) * xi(static_cast<Eigen::Index>(k));
        if (std::abs(diff) > bound) return false;
    }
    return true;
}

EndpointLaw endpoint_law(const StepKernel& qhat, const StepSet& steps, int n,
                         std::int64_t cell_budget) {
    return run_dp(steps, n, cell_budget,
                  [&](int, const LatticePoint&) -> const StepKernel& { return qhat; });
}

EndpointLaw endpoint_law(const EnvironmentSample& env, const StepSet& steps, int n,
                         std::int64_t cell_budget) {
    if (n > env.horizon()) throw HorizonExceeded("endpoint DP horizon beyond sampled levels");
    return run_dp(steps, n, cell_budget,
                  [&](int i, const LatticePoint& x) -> const StepKernel& { return env.kernel_at(i, x); });
}

double log_window_mass(const EndpointLaw& law, const VelocityWindow& window) {
    double acc = kNegInf;
    bool any = false;
    for (const auto& [x, logp] : law.log_probs) {
        if (window.contains(x, law.horizon)) {
            acc = log_add(acc, logp);
            any = true;
        }
    }
    if (!any) throw EmptyWindow("no reachable endpoint in the window");
    return acc;
}

std::vector<SlopePoint> ldp_slope(const StepKernel& qhat, const StepSet& steps,
                                  const Eigen::VectorXd& xi, const std::vector<int>& n_grid,
                                  double window_radius) {
    return slopes_from(n_grid, xi, window_radius,
                       [&](int n) { return endpoint_law(qhat, steps, n); });
}

std::vector<SlopePoint> ldp_slope(const EnvironmentSample& env, const StepSet& steps,
                                  const Eigen::VectorXd& xi, const std::vector<int>& n_grid,
                                  double window_radius) {
    return slopes_from(n_grid, xi, window_radius,
                       [&](int n) { return endpoint_law(env, steps, n); });
}

StepJointLaw conditional_first_steps(const StepKernel& qhat, const StepSet& steps, int n,
                                     const Eigen::VectorXd& xi, double window_radius, int k) {
    const int m = steps.size();
    if (k < 1 || k >= n) throw ConfigError("k", "prefix length must be in [1, n)");
    double tuples = std::pow(static_cast<double>(m), k);
    if (tuples > 1e6) throw CapExceeded("tuple enumeration above the 10^6 cap");

    EndpointLaw tail = endpoint_law(qhat, steps, n - k);
    VelocityWindow window{xi, window_radius};

    StepJointLaw law;
    law.horizon = k;
    std::vector<int> tuple(static_cast<std::size_t>(k), 0);
    double total = kNegInf;
    std::map<std::vector<int>, double> logs;
    while (true) {
        // prefix weight and displacement
        double logw = 0.0;
        LatticePoint x(static_cast<std::size_t>(steps.dim()), 0);
        bool dead = false;
        for (int i = 0; i < k && !dead; ++i) {
            double p = qhat[tuple[static_cast<std::size_t>(i)]];
            if (p <= 0.0) dead = true;
            else {
                logw += std::log(p);
                x = add_step(x, steps.step(tuple[static_cast<std::size_t>(i)]));
            }
        }
        if (!dead) {
            // mass of the window shifted by the prefix displacement
            double tail_mass = kNegInf;
            for (const auto& [y, logp] : tail.log_probs) {
                if (window.contains(add_step(y, x), n)) tail_mass = log_add(tail_mass, logp);
            }
            if (tail_mass != kNegInf) {
                logs[tuple] = logw + tail_mass;
                total = log_add(total, logw + tail_mass);
            }
        }
        // next tuple
        int pos = k - 1;
        while (pos >= 0 && ++tuple[static_cast<std::size_t>(pos)] == m) {
            tuple[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    if (total == kNegInf) throw EmptyWindow("conditioning event has zero probability");
    for (const auto& [t, logp] : logs) law.probs[t] = std::exp(logp - total);
    return law;
}

MCEstimate importance_sample(const StepKernel& qhat, const StepSet& steps, const Geometry& geom,
                             int n, const Eigen::VectorXd& xi, double window_radius,
                             std::int64_t replicas, std::uint64_t seed, EstimatorKind kind) {
    if (replicas < 1) throw ConfigError("replicas", "need at least one replica");
    Eigen::VectorXd rho = Eigen::VectorXd::Zero(steps.dim());
    double log_phi = 0.0;
    if (kind == EstimatorKind::Tilted) {
        RateSolution sol = rate_averaged(xi, qhat, steps, geom);
        rho = sol.rho;
        log_phi = log_mgf(rho, qhat, steps).value;
    }
    StepKernel sampler = (kind == EstimatorKind::Tilted) ? tilted_step_kernel(rho, qhat, steps) : qhat;

    // sampling CDF over steps
    const int m = steps.size();
    std::vector<double> cdf(static_cast<std::size_t>(m));
    double acc = 0.0;
    for (int z = 0; z < m; ++z) {
        acc += sampler[z];
        cdf[static_cast<std::size_t>(z)] = acc;
    }

    VelocityWindow window{xi, window_radius};
    double sum = 0.0, sumsq = 0.0;
    for (std::int64_t r = 0; r < replicas; ++r) {
        rng::Stream stream(seed, static_cast<std::uint64_t>(r));
        LatticePoint x(static_cast<std::size_t>(steps.dim()), 0);
        double rho_dot_x = 0.0;
        for (int i = 0; i < n; ++i) {
            double u = stream.next_u01();
            int z = static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            if (z >= m) z = m - 1;
            x = add_step(x, steps.step(z));
            rho_dot_x += rho.dot(steps.step_vector(z));
        }
        double value = 0.0;
        if (window.contains(x, n)) {
            value = (kind == EstimatorKind::Tilted)
                        ? std::exp(-rho_dot_x + static_cast<double>(n) * log_phi)
                        : 1.0;
        }
        sum += value;
        sumsq += value * value;
    }
    MCEstimate est;
    est.replicas = replicas;
    est.seed = seed;
    est.kind = kind;
    est.mean = sum / static_cast<double>(replicas);
    double nrep = static_cast<double>(replicas);
    double var = std::max(sumsq / nrep - est.mean * est.mean, 0.0);
    est.std_error = std::sqrt(var / nrep);
    return est;
}

ConcentrationReport log_un_concentration(const Eigen::VectorXd& rho, const KernelMixture& mixture,
                                         const StepSet& steps, const std::vector<int>& n_grid,
                                         std::int64_t replicas, double epsilon,
                                         std::uint64_t seed) {
    if (!mixture.strictly_positive()) {
        throw ZeroProbabilityStep("log u_n needs strictly positive atom kernels");
    }
    // log u_1 per atom and the exact mean rate
    StepKernel qhat = averaged_kernel(mixture);
    const double log_phi = log_mgf(rho, qhat, steps).value;
    std::vector<double> log_u1(mixture.atoms.size());
    double m1 = 0.0;
    for (std::size_t j = 0; j < mixture.atoms.size(); ++j) {
        log_u1[j] = std::log(w_of(rho, mixture.atoms[j], steps)) - log_phi;
        m1 += mixture.weights[j] * log_u1[j];
    }

    std::vector<int> grid = n_grid;
    std::sort(grid.begin(), grid.end());
    const int max_n = grid.back();

    std::vector<double> mean_acc(grid.size(), 0.0), sq_acc(grid.size(), 0.0);
    std::vector<std::int64_t> tail_count(grid.size(), 0);
    std::vector<double> wcdf(mixture.weights.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < mixture.weights.size(); ++j) {
        acc += mixture.weights[j];
        wcdf[j] = acc;
    }
    for (std::int64_t r = 0; r < replicas; ++r) {
        rng::Stream stream(seed, static_cast<std::uint64_t>(r));
        double s = 0.0;
        std::size_t gi = 0;
        for (int i = 1; i <= max_n && gi < grid.size(); ++i) {
            double u = stream.next_u01();
            std::size_t j = static_cast<std::size_t>(
                std::lower_bound(wcdf.begin(), wcdf.end(), u) - wcdf.begin());
            if (j >= log_u1.size()) j = log_u1.size() - 1;
            s += log_u1[j];
            if (i == grid[gi]) {
                double nd = static_cast<double>(i);
                double rate = s / nd;
                mean_acc[gi] += rate;
                sq_acc[gi] += rate * rate;
                if (std::abs(s - nd * m1) >= nd * epsilon) ++tail_count[gi];
                ++gi;
            }
        }
    }

    ConcentrationReport rep;
    rep.exact_mean_rate = m1;
    rep.epsilon = epsilon;
    double nrep = static_cast<double>(replicas);
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        ConcentrationPoint pt;
        pt.n = grid[gi];
        pt.mean_rate = mean_acc[gi] / nrep;
        double var = std::max(sq_acc[gi] / nrep - pt.mean_rate * pt.mean_rate, 0.0);
        pt.se_rate = std::sqrt(var / nrep);
        pt.tail_frequency = static_cast<double>(tail_count[gi]) / nrep;
        rep.points.push_back(pt);
    }
    // least squares of log(tail frequency) against n over nonzero frequencies
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& pt : rep.points) {
        if (pt.tail_frequency > 0.0) {
            double x = static_cast<double>(pt.n), y = std::log(pt.tail_frequency);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++cnt;
        }
    }
    rep.fitted_log_slope = (cnt >= 2) ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx)
                                      : std::numeric_limits<double>::quiet_NaN();
    return rep;
}

std::vector<GapProbeRow> dimension_gap_probe(const EnvironmentSpec& spec, const StepSet& steps,
                                             const std::vector<Eigen::VectorXd>& xi_list, int n,
                                             int env_samples, double window_radius) {
    StepKernel qhat = averaged_kernel(spec);
    EndpointLaw averaged = endpoint_law(qhat, steps, n);

    std::vector<EndpointLaw> quenched;
    quenched.reserve(static_cast<std::size_t>(env_samples));
    for (int s = 0; s < env_samples; ++s) {
        EnvironmentSpec sample_spec = spec;
        sample_spec.seed = rng::hash_counters(spec.seed, {s});
        quenched.push_back(endpoint_law(sample_levels(sample_spec, n), steps, n));
    }

    std::vector<GapProbeRow> rows;
    for (const auto& xi : xi_list) {
        VelocityWindow w{xi, window_radius};
        GapProbeRow row;
        row.xi = xi;
        row.averaged_slope = -log_window_mass(averaged, w) / static_cast<double>(n);
        double sum = 0.0, sumsq = 0.0;
        for (const auto& law : quenched) {
            double s = -log_window_mass(law, w) / static_cast<double>(n);
            sum += s;
            sumsq += s * s;
        }
        double ns = static_cast<double>(env_samples);
        row.quenched_mean = sum / ns;
        double var = std::max(sumsq / ns - row.quenched_mean * row.quenched_mean, 0.0);
        row.quenched_se = (env_samples > 1) ? std::sqrt(var / (ns - 1.0)) : 0.0;
        row.gap = row.quenched_mean - row.averaged_slope;
        row.gap_sig = (row.quenched_se > 0.0) ? row.gap / (3.0 * row.quenched_se)
                                              : std::numeric_limits<double>::infinity();
        rows.push_back(row);
    }
    return rows;
}

} // namespace ldrwe
