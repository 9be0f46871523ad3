#ifndef LDRWE_STEP_SET_HPP
#define LDRWE_STEP_SET_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

namespace ldrwe {

/// Integer lattice point, one coordinate per spatial dimension.
using LatticePoint = std::vector<std::int64_t>;

struct LatticePointHash {
    std::size_t operator()(const LatticePoint& p) const {
        std::uint64_t h = 0x243F6A8885A308D3ULL;
        for (std::int64_t v : p) {
            h ^= static_cast<std::uint64_t>(v) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

/**
 * @brief The finite one-step range of the walk: distinct integer vectors.
 *
 * At least two steps are required; one-step walks are deterministic and out
 * of scope. The step order is significant: kernels are probability vectors
 * aligned with it.
 */
class StepSet {
public:
    StepSet(int dim, std::vector<LatticePoint> steps);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(steps_.size()); }
    const std::vector<LatticePoint>& steps() const { return steps_; }
    const LatticePoint& step(int i) const { return steps_[static_cast<std::size_t>(i)]; }

    /// Step i as a real vector.
    Eigen::VectorXd step_vector(int i) const;
    /// d x |R| matrix with one step per column.
    const Eigen::MatrixXd& step_matrix() const { return matrix_; }

    /// Index of a step, or -1 if absent.
    int index_of(const LatticePoint& z) const;

private:
    int dim_;
    std::vector<LatticePoint> steps_;
    Eigen::MatrixXd matrix_;
};

} // namespace ldrwe

#endif // LDRWE_STEP_SET_HPP
