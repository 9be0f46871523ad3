#ifndef LDRWE_JOINT_LAW_HPP
#define LDRWE_JOINT_LAW_HPP

#include <cstdint>
#include <map>
#include <vector>

namespace ldrwe {

/// Law of a finite step tuple (Z_1, ..., Z_horizon). Keys are tuples of step
/// indices into the step list; the ordered map fixes the iteration order.
struct StepJointLaw {
    int horizon = 0;
    std::map<std::vector<int>, double> probs;

    double total_mass() const {
        double s = 0.0;
        for (const auto& [k, p] : probs) s += p;
        return s;
    }
};

} // namespace ldrwe

#endif // LDRWE_JOINT_LAW_HPP
