#include "ldrwe/step_set.hpp"

#include <set>

#include "ldrwe/errors.hpp"

namespace ldrwe {

StepSet::StepSet(int dim, std::vector<LatticePoint> steps)
    : dim_(dim), steps_(std::move(steps)) {
    if (dim_ < 1) throw ConfigError("dim", "must be a positive integer");
    if (steps_.size() < 2) throw ConfigError("steps", "need at least two steps");
    std::set<LatticePoint> seen;
    for (const auto& z : steps_) {
        if (static_cast<int>(z.size()) != dim_)
            throw ConfigError("steps", "step dimension mismatch");
        if (!seen.insert(z).second)
            throw ConfigError("steps", "steps must be distinct");
    }
    matrix_.resize(dim_, static_cast<Eigen::Index>(steps_.size()));
    for (std::size_t j = 0; j < steps_.size(); ++j) {
        for (int i = 0; i < dim_; ++i) {
            matrix_(i, static_cast<Eigen::Index>(j)) = static_cast<double>(steps_[j][static_cast<std::size_t>(i)]);
        }
    }
}

Eigen::VectorXd StepSet::step_vector(int i) const {
    return matrix_.col(i);
}

int StepSet::index_of(const LatticePoint& z) const {
    for (std::size_t j = 0; j < steps_.size(); ++j) {
        if (steps_[j] == z) return static_cast<int>(j);
    }
    return -1;
}

} // namespace ldrwe
