#include "ldrwe/environment.hpp"

#include <cmath>

#include "ldrwe/errors.hpp"
#include "ldrwe/rng.hpp"

namespace ldrwe {

void StepKernel::validate(int expected_size) const {
    if (size() != expected_size)
        throw ConfigError("atom_probs", "kernel length must match the step list");
    double sum = 0.0;
    for (double p : probs) {
        if (p < 0.0 || !std::isfinite(p))
            throw ConfigError("atom_probs", "kernel entries must be nonnegative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ConfigError("atom_probs", "kernel entries must sum to 1");
}

bool StepKernel::strictly_positive() const {
    for (double p : probs)
        if (p <= 0.0) return false;
    return true;
}

void KernelMixture::validate(int kernel_size) const {
    if (atoms.empty()) throw ConfigError("atom_probs", "mixture needs at least one atom");
    if (weights.size() != atoms.size())
        throw ConfigError("atom_weights", "one weight per atom required");
    double sum = 0.0;
    for (double w : weights) {
        if (w <= 0.0 || !std::isfinite(w))
            throw ConfigError("atom_weights", "weights must be positive");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ConfigError("atom_weights", "weights must sum to 1");
    for (const auto& a : atoms) a.validate(kernel_size);
}

bool KernelMixture::strictly_positive() const {
    for (const auto& a : atoms)
        if (!a.strictly_positive()) return false;
    return true;
}

void EnvironmentSpec::validate(int kernel_size) const {
    mixture.validate(kernel_size);
    if (kind == EnvKind::Deterministic && mixture.size() != 1)
        throw ConfigError("env_kind", "deterministic environment takes exactly one atom");
}

namespace {

int pick_atom(const std::vector<double>& weights, double u) {
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < weights.size(); ++j) {
        acc += weights[j];
        if (u < acc) return static_cast<int>(j);
    }
    return static_cast<int>(weights.size()) - 1;
}

} // namespace

EnvironmentSample::EnvironmentSample(const EnvironmentSpec& spec, int horizon, std::vector<int> levels)
    : spec_(spec), horizon_(horizon), levels_(std::move(levels)),
      space_offset_(static_cast<std::size_t>(0)) {
    for (int idx : levels_) {
        if (idx < 0 || idx >= spec_.mixture.size())
            throw ConfigError("levels", "atom index outside the mixture");
    }
}

int EnvironmentSample::atom_at(int i, const LatticePoint& x) const {
    if (i < 0 || i >= horizon_) throw HorizonExceeded("time index outside sampled horizon");
    const int it = i + time_offset_;
    switch (spec_.kind) {
        case EnvKind::Deterministic:
            return 0;
        case EnvKind::SpatiallyConstant:
            return levels_[static_cast<std::size_t>(it)];
        case EnvKind::SpatialIIDField: {
            std::uint64_t h = rng::mix(spec_.seed ^ 0x5851F42D4C957F2DULL);
            h = rng::mix(h ^ static_cast<std::uint64_t>(it));
            for (std::size_t k = 0; k < x.size(); ++k) {
                std::int64_t coord = x[k];
                if (!space_offset_.empty()) coord += space_offset_[k];
                h = rng::mix(h ^ static_cast<std::uint64_t>(coord));
            }
            return pick_atom(spec_.mixture.weights, rng::to_unit(h));
        }
    }
    return 0;
}

const StepKernel& EnvironmentSample::kernel_at(int i, const LatticePoint& x) const {
    return spec_.mixture.atoms[static_cast<std::size_t>(atom_at(i, x))];
}

EnvironmentSample EnvironmentSample::shifted(int time_shift, const LatticePoint& space_shift) const {
    EnvironmentSample out(spec_, horizon_ - time_shift, levels_);
    out.time_offset_ = time_offset_ + time_shift;
    out.space_offset_ = space_offset_;
    if (out.space_offset_.empty()) out.space_offset_.assign(space_shift.size(), 0);
    for (std::size_t k = 0; k < space_shift.size(); ++k) out.space_offset_[k] += space_shift[k];
    return out;
}

StepKernel averaged_kernel(const KernelMixture& mixture) {
    StepKernel out;
    out.probs.assign(mixture.atoms.front().probs.size(), 0.0);
    for (std::size_t j = 0; j < mixture.atoms.size(); ++j) {
        for (std::size_t z = 0; z < out.probs.size(); ++z) {
            out.probs[z] += mixture.weights[j] * mixture.atoms[j].probs[z];
        }
    }
    return out;
}

StepKernel averaged_kernel(const EnvironmentSpec& env) {
    return averaged_kernel(env.mixture);
}

EnvironmentSample sample_levels(const EnvironmentSpec& spec, int n, std::uint64_t stream_id) {
    if (n < 1) throw ConfigError("n", "horizon must be at least 1");
    std::vector<int> levels;
    if (spec.kind != EnvKind::SpatialIIDField) {
        levels.reserve(static_cast<std::size_t>(n));
        rng::Stream stream(spec.seed, stream_id);
        for (int i = 0; i < n; ++i) {
            levels.push_back(spec.kind == EnvKind::Deterministic
                                 ? 0
                                 : pick_atom(spec.mixture.weights, stream.next_u01()));
        }
    }
    return EnvironmentSample(spec, n, std::move(levels));
}

bool degeneracy_check(const KernelMixture& mixture, const Eigen::VectorXd& rho,
                      const StepSet& steps) {
    const int m = steps.size();
    double w0 = 0.0;
    bool first = true;
    for (const auto& atom : mixture.atoms) {
        double w = 0.0;
        for (int z = 0; z < m; ++z) {
            w += atom[z] * std::exp(rho.dot(steps.step_vector(z)));
        }
        if (first) {
            w0 = w;
            first = false;
        } else if (std::abs(w - w0) > 1e-10 * std::max(1.0, std::abs(w0))) {
            return false;
        }
    }
    return true;
}

} // namespace ldrwe
