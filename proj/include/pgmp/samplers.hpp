#pragma once

#include "pgmp/kinematics.hpp"
#include "pgmp/rng.hpp"

namespace pgmp {

// Baseline samplers used for planner comparisons.

inline JointConfig uniformSample(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                                 Rng& rng) {
    JointConfig q(lower.size());
    for (Eigen::Index i = 0; i < lower.size(); ++i) q[i] = rng.uniform(lower[i], upper[i]);
    return q;
}

// Returns the goal with probability p_goal, otherwise a uniform draw.
inline JointConfig goalBiasSample(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                                  const JointConfig& goal, double p_goal, Rng& rng) {
    if (rng.uniform01() < p_goal) return goal;
    return uniformSample(lower, upper, rng);
}

}  // namespace pgmp
