#include "pgmp/collision.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pgmp {

namespace {

void cellRange(const OccupancyGrid& grid, const Obb& box, VoxelKey& lo, VoxelKey& hi) {
    Eigen::Vector3d alo, ahi;
    box.aabb(alo, ahi);
    lo = grid.keyAt(alo);
    hi = grid.keyAt(ahi);
}

}  // namespace

void OccupancyGrid::voxelizeBox(const Obb& box) {
    VoxelKey lo, hi;
    cellRange(*this, box, lo, hi);
    const double half = 0.5 * resolution_;
    for (std::int32_t x = lo.x; x <= hi.x; ++x)
        for (std::int32_t y = lo.y; y <= hi.y; ++y)
            for (std::int32_t z = lo.z; z <= hi.z; ++z) {
                const VoxelKey k{x, y, z};
                if (obbOverlapCube(box, cellCenter(k), half)) occupied_.insert(k);
            }
}

bool OccupancyGrid::intersectsObb(const Obb& box) const {
    if (occupied_.empty()) return false;
    VoxelKey lo, hi;
    cellRange(*this, box, lo, hi);
    const std::uint64_t range_cells = static_cast<std::uint64_t>(hi.x - lo.x + 1) *
                                      static_cast<std::uint64_t>(hi.y - lo.y + 1) *
                                      static_cast<std::uint64_t>(hi.z - lo.z + 1);
    const double half = 0.5 * resolution_;
    if (range_cells <= occupied_.size()) {
        for (std::int32_t x = lo.x; x <= hi.x; ++x)
            for (std::int32_t y = lo.y; y <= hi.y; ++y)
                for (std::int32_t z = lo.z; z <= hi.z; ++z) {
                    const VoxelKey k{x, y, z};
                    if (occupied_.count(k) && obbOverlapCube(box, cellCenter(k), half))
                        return true;
                }
        return false;
    }
    for (const VoxelKey& k : occupied_) {
        if (k.x < lo.x || k.x > hi.x || k.y < lo.y || k.y > hi.y || k.z < lo.z || k.z > hi.z)
            continue;
        if (obbOverlapCube(box, cellCenter(k), half)) return true;
    }
    return false;
}

void Scene::validate() const {
    robot.validate();
    if (d_safe < 0.0) throw std::invalid_argument("scene: d_safe must be non-negative");
    if (check_resolution <= 0.0)
        throw std::invalid_argument("scene: check_resolution must be positive");
    if (grid.resolution() <= 0.0)
        throw std::invalid_argument("scene: grid resolution must be positive");
    for (const Obb& b : static_boxes)
        if (!(b.half_extents.array() > 0.0).all())
            throw std::invalid_argument("scene: static box half-extents must be positive");
    for (const auto& [i, j] : self_collision_pairs) {
        if (i < 0 || j < 0 || i >= robot.linkCount() || j >= robot.linkCount())
            throw std::invalid_argument("scene: self-collision pair index out of range");
        if (i == j)
            throw std::invalid_argument("scene: self-collision pair (i,i) is not allowed");
        if (robot.adjacentLinks(i, j))
            throw std::invalid_argument(
                "scene: self-collision pair of adjacent links sharing a joint");
    }
    if (attachment && (attachment->chain < 0 || attachment->chain >= robot.chainCount()))
        throw std::invalid_argument("scene: attachment chain index out of range");
    if (attachment && !(attachment->box.half_extents.array() > 0.0).all())
        throw std::invalid_argument("scene: attachment half-extents must be positive");
}

bool configIsFree(const Scene& scene, const JointConfig& q) {
    const LinkPoseSet fk = forwardKinematics(scene.robot, q);

    // world boxes of the robot, inflated by d_safe
    std::vector<std::vector<Obb>> inflated(fk.link_boxes.size());
    for (std::size_t l = 0; l < fk.link_boxes.size(); ++l) {
        inflated[l].reserve(fk.link_boxes[l].size());
        for (const Obb& b : fk.link_boxes[l]) inflated[l].push_back(b.inflated(scene.d_safe));
    }
    std::optional<Obb> payload;
    if (scene.attachment) {
        const Eigen::Isometry3d& tcp = fk.tcp_poses[scene.attachment->chain];
        Obb b;
        b.center = tcp * scene.attachment->box.center;
        b.half_extents = scene.attachment->box.half_extents;
        b.rotation = tcp.rotation();
        payload = b.inflated(scene.d_safe);
    }

    // environment clearance
    for (const auto& boxes : inflated) {
        for (const Obb& b : boxes) {
            if (scene.grid.intersectsObb(b)) return false;
            for (const Obb& s : scene.static_boxes)
                if (obbOverlap(b, s)) return false;
        }
    }
    if (payload) {
        if (scene.grid.intersectsObb(*payload)) return false;
        for (const Obb& s : scene.static_boxes)
            if (obbOverlap(*payload, s)) return false;
    }

    // self clearance over the listed pairs
    for (const auto& [i, j] : scene.self_collision_pairs) {
        for (const Obb& a : inflated[i])
            for (const Obb& b : inflated[j])
                if (obbOverlap(a, b)) return false;
    }
    return true;
}

bool segmentIsFree(const Scene& scene, const JointConfig& a, const JointConfig& b,
                   double check_resolution) {
    if (a.size() != b.size())
        throw std::invalid_argument("segmentIsFree: configuration dimensions differ");
    if (check_resolution <= 0.0)
        throw std::invalid_argument("segmentIsFree: check_resolution must be positive");

    // Canonical endpoint order makes the check exactly symmetric; rounding
    // the step count up to a power of two nests the interpolation grids, so
    // refining the resolution can only find more collisions, never fewer.
    const JointConfig* lo = &a;
    const JointConfig* hi = &b;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) continue;
        if (a[i] > b[i]) std::swap(lo, hi);
        break;
    }
    const double span = (*hi - *lo).lpNorm<Eigen::Infinity>();
    int m = 1;
    while (m * check_resolution < span) m *= 2;
    for (int i = 0; i <= m; ++i) {
        const double t = static_cast<double>(i) / m;
        if (!configIsFree(scene, *lo + t * (*hi - *lo))) return false;
    }
    return true;
}

}  // namespace pgmp
