#pragma once

#include <Eigen/Geometry>

namespace pgmp {

// Oriented bounding box. `rotation` maps box-local axes into the world frame.
struct Obb {
    Eigen::Vector3d center{Eigen::Vector3d::Zero()};
    Eigen::Vector3d half_extents{Eigen::Vector3d::Zero()};
    Eigen::Matrix3d rotation{Eigen::Matrix3d::Identity()};

    Obb inflated(double margin) const {
        Obb out = *this;
        out.half_extents.array() += margin;
        return out;
    }

    // World-frame axis-aligned bounds of the box.
    void aabb(Eigen::Vector3d& lo, Eigen::Vector3d& hi) const {
        const Eigen::Vector3d r = rotation.cwiseAbs() * half_extents;
        lo = center - r;
        hi = center + r;
    }
};

// Separating-axis overlap test for two OBBs. Touching boxes (separation
// exactly equal to the projected extent) count as non-overlapping.
bool obbOverlap(const Obb& a, const Obb& b);

// Overlap between an OBB and an axis-aligned cube given by its center and
// half edge length.
bool obbOverlapCube(const Obb& a, const Eigen::Vector3d& cube_center, double cube_half);

}  // namespace pgmp
