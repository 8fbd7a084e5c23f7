#pragma once

#include <vector>

#include "pgmp/kinematics.hpp"

namespace pgmp {

// Ordered waypoint sequence in joint space. Consecutive duplicates
// (within 1e-12 per joint) are collapsed at construction.
struct Path {
    std::vector<JointConfig> waypoints;

    static Path fromWaypoints(std::vector<JointConfig> points) {
        Path p;
        for (auto& q : points) {
            if (!p.waypoints.empty() &&
                (p.waypoints.back() - q).lpNorm<Eigen::Infinity>() < 1e-12)
                continue;
            p.waypoints.push_back(std::move(q));
        }
        return p;
    }

    int size() const { return static_cast<int>(waypoints.size()); }
    bool empty() const { return waypoints.empty(); }
    const JointConfig& front() const { return waypoints.front(); }
    const JointConfig& back() const { return waypoints.back(); }
    const JointConfig& operator[](int i) const { return waypoints[i]; }

    // Total L1 length, the sum of per-segment Manhattan displacements.
    double lengthL1() const {
        double len = 0.0;
        for (std::size_t i = 1; i < waypoints.size(); ++i)
            len += (waypoints[i] - waypoints[i - 1]).lpNorm<1>();
        return len;
    }
};

}  // namespace pgmp
