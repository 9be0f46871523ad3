#ifndef LDRWE_ENVIRONMENT_HPP
#define LDRWE_ENVIRONMENT_HPP

#include <cstdint>
#include <vector>

#include "ldrwe/step_set.hpp"

namespace ldrwe {

/// Probability vector over the step set, aligned with the step order.
struct StepKernel {
    std::vector<double> probs;

    double operator[](int i) const { return probs[static_cast<std::size_t>(i)]; }
    int size() const { return static_cast<int>(probs.size()); }

    /// Throws ConfigError unless entries are nonnegative and sum to 1 within 1e-12.
    void validate(int expected_size) const;
    bool strictly_positive() const;
};

/// Finitely supported law on kernels: weights are positive and sum to 1.
struct KernelMixture {
    std::vector<double> weights;
    std::vector<StepKernel> atoms;

    int size() const { return static_cast<int>(atoms.size()); }
    void validate(int kernel_size) const;
    bool strictly_positive() const;
};

enum class EnvKind {
    Deterministic,     ///< single fixed kernel everywhere
    SpatiallyConstant, ///< one kernel per time level, i.i.d. across levels
    SpatialIIDField,   ///< independent kernel per (time, site) cell
};

/**
 * @brief Law of the environment: kind, kernel mixture, and a seed.
 *
 * Deterministic environments are stored as a single-atom mixture. The seed
 * fixes every sample drawn from the spec, so all downstream results are
 * reproducible bit-for-bit.
 */
struct EnvironmentSpec {
    EnvKind kind = EnvKind::Deterministic;
    KernelMixture mixture;
    std::uint64_t seed = 0;

    void validate(int kernel_size) const;
};

/**
 * @brief One environment realization over a finite time horizon.
 *
 * For spatially constant environments the realization is an explicit list of
 * atom indices, one per level. For spatial i.i.d. fields the atom at (i, x)
 * is a pure function of (seed, i, x) through a counter-based hash, so no
 * field storage is needed and arbitrarily distant sites can be queried.
 *
 * The sample carries a space-time offset so that environment shifts (as seen
 * from the particle) are cheap views of the same realization.
 */
class EnvironmentSample {
public:
    EnvironmentSample(const EnvironmentSpec& spec, int horizon, std::vector<int> levels);

    int horizon() const { return horizon_; }
    EnvKind kind() const { return spec_.kind; }
    const EnvironmentSpec& spec() const { return spec_; }
    const std::vector<int>& levels() const { return levels_; }

    /// Atom index at time i, site x (relative to the sample's own frame).
    int atom_at(int i, const LatticePoint& x) const;
    /// Kernel at time i, site x. Throws HorizonExceeded outside [0, horizon).
    const StepKernel& kernel_at(int i, const LatticePoint& x) const;

    /// View of the environment shifted by (time_shift, space_shift).
    EnvironmentSample shifted(int time_shift, const LatticePoint& space_shift) const;

private:
    EnvironmentSpec spec_;
    int horizon_;
    std::vector<int> levels_;      // spatially constant path; empty for fields
    int time_offset_ = 0;
    LatticePoint space_offset_;
};

/// Averaged kernel q(z) = E[omega(z)]: the mixture mean.
StepKernel averaged_kernel(const EnvironmentSpec& env);
StepKernel averaged_kernel(const KernelMixture& mixture);

/// Draw n i.i.d. levels with the mixture weights, reproducibly from the seed.
EnvironmentSample sample_levels(const EnvironmentSpec& spec, int n, std::uint64_t stream_id = 0);

/**
 * @brief Detect the degenerate tilt directions of a mixture.
 *
 * True iff the one-step tilted mass W(rho, q_j) is constant across atoms
 * within 1e-10 (relative), i.e. the environment looks deterministic from the
 * direction rho. Strict-gap statements hold only when this returns false.
 */
bool degeneracy_check(const KernelMixture& mixture, const Eigen::VectorXd& rho,
                      const StepSet& steps);

} // namespace ldrwe

#endif // LDRWE_ENVIRONMENT_HPP
