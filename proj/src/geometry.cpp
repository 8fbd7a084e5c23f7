#include "pgmp/geometry.hpp"

namespace pgmp {

namespace {

// Gottschalk's OBB test in the frame of box a. R is b's rotation expressed
// in a's frame, t the center offset in a's frame. The epsilon added to the
// |R| entries guards the nine cross-product axes against near-parallel
// edge pairs.
bool satOverlap(const Eigen::Matrix3d& R, const Eigen::Vector3d& t,
                const Eigen::Vector3d& ea, const Eigen::Vector3d& eb) {
    constexpr double kEps = 1e-12;
    Eigen::Matrix3d absR = R.cwiseAbs();
    absR.array() += kEps;

    // a's face axes
    for (int i = 0; i < 3; ++i) {
        const double ra = ea[i];
        const double rb = absR.row(i).dot(eb);
        if (std::abs(t[i]) >= ra + rb) return false;
    }
    // b's face axes
    for (int j = 0; j < 3; ++j) {
        const double ra = absR.col(j).dot(ea);
        const double rb = eb[j];
        if (std::abs(t.dot(R.col(j))) >= ra + rb) return false;
    }
    // cross products of edge axes
    for (int i = 0; i < 3; ++i) {
        const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
        for (int j = 0; j < 3; ++j) {
            const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
            const double ra = ea[i1] * absR(i2, j) + ea[i2] * absR(i1, j);
            const double rb = eb[j1] * absR(i, j2) + eb[j2] * absR(i, j1);
            const double dist = std::abs(t[i2] * R(i1, j) - t[i1] * R(i2, j));
            if (dist >= ra + rb) return false;
        }
    }
    return true;
}

}  // namespace

bool obbOverlap(const Obb& a, const Obb& b) {
    const Eigen::Matrix3d R = a.rotation.transpose() * b.rotation;
    const Eigen::Vector3d t = a.rotation.transpose() * (b.center - a.center);
    return satOverlap(R, t, a.half_extents, b.half_extents);
}

bool obbOverlapCube(const Obb& a, const Eigen::Vector3d& cube_center, double cube_half) {
    const Eigen::Matrix3d R = a.rotation.transpose();
    const Eigen::Vector3d t = a.rotation.transpose() * (cube_center - a.center);
    return satOverlap(R, t, a.half_extents, Eigen::Vector3d::Constant(cube_half));
}

}  // namespace pgmp
