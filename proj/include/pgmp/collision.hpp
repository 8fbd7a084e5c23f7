#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pgmp/geometry.hpp"
#include "pgmp/kinematics.hpp"

namespace pgmp {

struct VoxelKey {
    std::int32_t x{0}, y{0}, z{0};
    bool operator==(const VoxelKey&) const = default;
};

struct VoxelKeyHash {
    std::size_t operator()(const VoxelKey& k) const {
        std::uint64_t h = static_cast<std::uint32_t>(k.x);
        h = h * 0x100000001B3ULL ^ static_cast<std::uint32_t>(k.y);
        h = h * 0x100000001B3ULL ^ static_cast<std::uint32_t>(k.z);
        h *= 0xC2B2AE3D27D4EB4FULL;
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

// Sparse occupancy voxel grid: a flat hash of occupied cell indices.
// Voxel (i,j,k) covers [origin + i*res, origin + (i+1)*res) per axis.
class OccupancyGrid {
public:
    OccupancyGrid() = default;
    OccupancyGrid(const Eigen::Vector3d& origin, double resolution)
        : origin_(origin), resolution_(resolution) {}

    double resolution() const { return resolution_; }
    const Eigen::Vector3d& origin() const { return origin_; }
    std::size_t size() const { return occupied_.size(); }
    bool empty() const { return occupied_.empty(); }

    void insert(const VoxelKey& k) { occupied_.insert(k); }
    bool occupied(const VoxelKey& k) const { return occupied_.count(k) != 0; }

    VoxelKey keyAt(const Eigen::Vector3d& p) const {
        const Eigen::Vector3d r = (p - origin_) / resolution_;
        return {static_cast<std::int32_t>(std::floor(r.x())),
                static_cast<std::int32_t>(std::floor(r.y())),
                static_cast<std::int32_t>(std::floor(r.z()))};
    }

    Eigen::Vector3d cellCenter(const VoxelKey& k) const {
        return origin_ + resolution_ * Eigen::Vector3d(k.x + 0.5, k.y + 0.5, k.z + 0.5);
    }

    // Marks every cell whose cube intersects the box.
    void voxelizeBox(const Obb& box);

    // True if any occupied cell cube overlaps the box. Scans whichever is
    // smaller: the cells under the box's AABB or the occupied set.
    bool intersectsObb(const Obb& box) const;

    const std::unordered_set<VoxelKey, VoxelKeyHash>& cells() const { return occupied_; }

private:
    Eigen::Vector3d origin_{Eigen::Vector3d::Zero()};
    double resolution_{0.01};
    std::unordered_set<VoxelKey, VoxelKeyHash> occupied_;
};

// Payload box rigidly attached to a chain's TCP frame.
struct AttachedBox {
    int chain{0};
    BoxGeometry box;
};

// Immutable collision world: occupancy grid, static boxes, robot model,
// safety margin and the self-collision pair list.
struct Scene {
    RobotModel robot;
    OccupancyGrid grid;
    std::vector<Obb> static_boxes;
    double d_safe{0.01};
    double check_resolution{0.05};
    std::vector<std::pair<int, int>> self_collision_pairs;
    std::optional<AttachedBox> attachment;

    // Throws std::invalid_argument on violated invariants (negative d_safe,
    // (i,i) or adjacent self pairs, malformed robot).
    void validate() const;
};

// True iff every link box (and the attached payload box), inflated by
// d_safe, clears all occupied voxels and static boxes, and every listed
// link pair of d_safe-inflated boxes is disjoint.
bool configIsFree(const Scene& scene, const JointConfig& q);

// Checks the straight joint-space segment at interpolation steps no coarser
// than check_resolution (L-inf), endpoints included.
bool segmentIsFree(const Scene& scene, const JointConfig& a, const JointConfig& b,
                   double check_resolution);

}  // namespace pgmp
