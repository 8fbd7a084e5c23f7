#pragma once

// Independent reference implementations used only by the test suites.
// Everything here is deliberately written against the plain textbook
// definitions, without reusing the library's code paths.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "pgmp/collision.hpp"
#include "pgmp/kinematics.hpp"

namespace oracles {

// --- geometry -------------------------------------------------------------

// Distance from a world point to an OBB (0 inside).
inline double pointToObb(const Eigen::Vector3d& p, const pgmp::Obb& box) {
    const Eigen::Vector3d local = box.rotation.transpose() * (p - box.center);
    const Eigen::Vector3d clamped =
        local.cwiseMax(-box.half_extents).cwiseMin(box.half_extents);
    return (local - clamped).norm();
}

inline double pointToCube(const Eigen::Vector3d& p, const Eigen::Vector3d& center,
                          double half) {
    const Eigen::Vector3d local = (p - center).cwiseAbs().array() - half;
    return local.cwiseMax(0.0).norm();
}

// Dense grid of points covering a box volume (faces included).
inline std::vector<Eigen::Vector3d> sampleBoxPoints(const pgmp::Obb& box, double spacing) {
    std::vector<Eigen::Vector3d> points;
    Eigen::Vector3i counts;
    for (int a = 0; a < 3; ++a)
        counts[a] = std::max(2, static_cast<int>(std::ceil(2.0 * box.half_extents[a] /
                                                           spacing)) + 1);
    for (int i = 0; i < counts[0]; ++i)
        for (int j = 0; j < counts[1]; ++j)
            for (int k = 0; k < counts[2]; ++k) {
                Eigen::Vector3d local;
                local[0] = -box.half_extents[0] +
                           2.0 * box.half_extents[0] * i / (counts[0] - 1);
                local[1] = -box.half_extents[1] +
                           2.0 * box.half_extents[1] * j / (counts[1] - 1);
                local[2] = -box.half_extents[2] +
                           2.0 * box.half_extents[2] * k / (counts[2] - 1);
                points.push_back(box.center + box.rotation * local);
            }
    return points;
}

// Minimum clearance between the robot's (uninflated) link boxes and all
// obstacles, estimated by dense point sampling. Collision semantics then
// follow from comparing against d_safe.
inline double minClearanceDense(const pgmp::Scene& scene, const pgmp::JointConfig& q,
                                double spacing) {
    const pgmp::LinkPoseSet fk = pgmp::forwardKinematics(scene.robot, q);
    double min_dist = std::numeric_limits<double>::infinity();
    const double half = 0.5 * scene.grid.resolution();
    for (const auto& boxes : fk.link_boxes) {
        for (const pgmp::Obb& box : boxes) {
            for (const Eigen::Vector3d& p : sampleBoxPoints(box, spacing)) {
                for (const pgmp::VoxelKey& k : scene.grid.cells())
                    min_dist =
                        std::min(min_dist, pointToCube(p, scene.grid.cellCenter(k), half));
                for (const pgmp::Obb& s : scene.static_boxes)
                    min_dist = std::min(min_dist, pointToObb(p, s));
            }
        }
    }
    return min_dist;
}

// --- Douglas-Peucker ------------------------------------------------------

inline double pointToChordOracle(const Eigen::VectorXd& p, const Eigen::VectorXd& a,
                                 const Eigen::VectorXd& b) {
    const Eigen::VectorXd d = b - a;
    const double len2 = d.squaredNorm();
    if (len2 < 1e-24) return (p - a).norm();
    const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
    return (p - a - t * d).norm();
}

// Plain textbook recursion building the kept-point list directly.
inline void dpRecurseOracle(const std::vector<Eigen::VectorXd>& pts, int a, int b,
                            double threshold, std::vector<int>& kept) {
    if (b - a < 2) return;
    int arg = -1;
    double max_dev = -1.0;
    for (int i = a + 1; i < b; ++i) {
        const double dev = pointToChordOracle(pts[i], pts[a], pts[b]);
        if (dev > max_dev) {
            max_dev = dev;
            arg = i;
        }
    }
    if (max_dev < threshold) return;
    dpRecurseOracle(pts, a, arg, threshold, kept);
    kept.push_back(arg);
    dpRecurseOracle(pts, arg, b, threshold, kept);
}

inline std::vector<Eigen::VectorXd> douglasPeuckerOracle(
    const std::vector<Eigen::VectorXd>& pts, double threshold) {
    if (pts.size() <= 2) return pts;
    std::vector<int> kept{0};
    dpRecurseOracle(pts, 0, static_cast<int>(pts.size()) - 1, threshold, kept);
    kept.push_back(static_cast<int>(pts.size()) - 1);
    std::vector<Eigen::VectorXd> out;
    for (int i : kept) out.push_back(pts[i]);
    return out;
}

// --- B-spline -------------------------------------------------------------

// Cox-de Boor basis recursion; valid for u in [knots.front(), knots.back()).
inline double bsplineBasis(int i, int p, double u, const std::vector<double>& knots) {
    if (p == 0) return knots[i] <= u && u < knots[i + 1] ? 1.0 : 0.0;
    double left = 0.0, right = 0.0;
    const double d1 = knots[i + p] - knots[i];
    if (d1 > 0.0) left = (u - knots[i]) / d1 * bsplineBasis(i, p - 1, u, knots);
    const double d2 = knots[i + p + 1] - knots[i + 1];
    if (d2 > 0.0)
        right = (knots[i + p + 1] - u) / d2 * bsplineBasis(i + 1, p - 1, u, knots);
    return left + right;
}

inline Eigen::VectorXd bsplineCurveOracle(const std::vector<Eigen::VectorXd>& control,
                                          int degree, const std::vector<double>& knots,
                                          double u) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(control.front().size());
    for (std::size_t i = 0; i < control.size(); ++i)
        out += bsplineBasis(static_cast<int>(i), degree, u, knots) * control[i];
    return out;
}

// --- scalar Gaussians -----------------------------------------------------

inline double gaussian1dOracle(double x, double mu, double var) {
    return std::exp(-0.5 * (x - mu) * (x - mu) / var) / std::sqrt(2.0 * M_PI * var);
}

}  // namespace oracles
