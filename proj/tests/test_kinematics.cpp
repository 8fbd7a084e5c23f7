#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pgmp/kinematics.hpp"
#include "pgmp/rng.hpp"

using namespace pgmp;

namespace {

// Planar 2-link arm, unit link lengths, both joints about z.
RobotModel planarArm(double lo1 = -M_PI, double hi1 = M_PI, double lo2 = -M_PI,
                     double hi2 = M_PI) {
    Chain c;
    c.name = "arm";
    JointSpec j1;
    j1.axis = Eigen::Vector3d::UnitZ();
    j1.offset = Eigen::Vector3d(1, 0, 0);
    j1.lower = lo1;
    j1.upper = hi1;
    j1.link_boxes.push_back({Eigen::Vector3d(0.5, 0, 0), Eigen::Vector3d(0.5, 0.02, 0.02)});
    JointSpec j2 = j1;
    j2.lower = lo2;
    j2.upper = hi2;
    c.joints = {j1, j2};
    return RobotModel({c});
}

RobotModel dualArm() {
    Chain left, right;
    left.name = "left";
    right.name = "right";
    JointSpec j;
    j.axis = Eigen::Vector3d::UnitZ();
    j.offset = Eigen::Vector3d(0.5, 0, 0);
    j.lower = -M_PI;
    j.upper = M_PI;
    j.link_boxes.push_back({Eigen::Vector3d(0.25, 0, 0), Eigen::Vector3d(0.25, 0.02, 0.02)});
    left.joints = {j, j};
    right.joints = {j, j};
    right.base = Eigen::Isometry3d(Eigen::Translation3d(0, 1.0, 0));
    return RobotModel({left, right});
}

JointConfig config2(double a, double b) {
    JointConfig q(2);
    q << a, b;
    return q;
}

}  // namespace

TEST_CASE("forward kinematics matches the hand-computed planar chain") {
    const RobotModel model = planarArm();

    SUBCASE("zero angles sum the link offsets") {
        const LinkPoseSet fk = forwardKinematics(model, config2(0, 0));
        CHECK(fk.tcp[0].isApprox(Eigen::Vector3d(2, 0, 0), 1e-12));
        CHECK(fk.within_limits);
    }
    SUBCASE("rigid rotation of the zero pose") {
        const LinkPoseSet fk = forwardKinematics(model, config2(M_PI / 2, 0));
        CHECK((fk.tcp[0] - Eigen::Vector3d(0, 2, 0)).norm() < 1e-12);
    }
    SUBCASE("elbow bend, composed by hand") {
        // joint frames: rotate 90, advance 1, rotate -90, advance 1 -> (1,1)
        const LinkPoseSet fk = forwardKinematics(model, config2(M_PI / 2, -M_PI / 2));
        CHECK((fk.tcp[0] - Eigen::Vector3d(1, 1, 0)).norm() < 1e-12);
    }
}

TEST_CASE("forward kinematics rejects bad input and flags limit violations") {
    const RobotModel model = planarArm(-1.0, 1.0, -1.0, 1.0);
    CHECK_THROWS_AS(forwardKinematics(model, Eigen::VectorXd::Zero(3)),
                    std::invalid_argument);
    JointConfig q = config2(0, 0);
    q[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(forwardKinematics(model, q), std::invalid_argument);
    // out-of-limit configurations are representable, only flagged
    const LinkPoseSet fk = forwardKinematics(model, config2(1.5, 0));
    CHECK_FALSE(fk.within_limits);
}

TEST_CASE("fk determinism and rotation orthonormality") {
    const RobotModel model = planarArm();
    Rng rng(7);
    for (int t = 0; t < 25; ++t) {
        const JointConfig q = config2(rng.uniform(-M_PI, M_PI), rng.uniform(-M_PI, M_PI));
        const LinkPoseSet a = forwardKinematics(model, q);
        const LinkPoseSet b = forwardKinematics(model, q);
        for (std::size_t l = 0; l < a.link_poses.size(); ++l) {
            CHECK(a.link_poses[l].matrix() == b.link_poses[l].matrix());
            const Eigen::Matrix3d r = a.link_poses[l].rotation();
            CHECK((r * r.transpose() - Eigen::Matrix3d::Identity()).norm() < 1e-9);
        }
        CHECK(a.tcp[0] == b.tcp[0]);
    }
}

TEST_CASE("rigid-body property: distances on one link never change") {
    const RobotModel model = planarArm();
    const Eigen::Vector3d p1(0.2, 0.01, 0.0), p2(0.9, -0.02, 0.01);
    Rng rng(11);
    const double ref = (p1 - p2).norm();
    for (int t = 0; t < 25; ++t) {
        const JointConfig q = config2(rng.uniform(-M_PI, M_PI), rng.uniform(-M_PI, M_PI));
        const LinkPoseSet fk = forwardKinematics(model, q);
        for (const Eigen::Isometry3d& pose : fk.link_poses)
            CHECK((pose * p1 - pose * p2).norm() == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("chain independence in a dual-arm model") {
    const RobotModel model = dualArm();
    JointConfig q(4);
    q << 0.3, -0.2, 0.8, 0.1;
    const LinkPoseSet before = forwardKinematics(model, q);
    q[0] = -1.1;
    q[1] = 0.7;
    const LinkPoseSet after = forwardKinematics(model, q);
    // chain 1 owns links 2 and 3
    CHECK(before.link_poses[2].matrix() == after.link_poses[2].matrix());
    CHECK(before.link_poses[3].matrix() == after.link_poses[3].matrix());
    CHECK(before.tcp[1] == after.tcp[1]);
    CHECK(before.tcp[0] != after.tcp[0]);
}

TEST_CASE("tcp distance") {
    const RobotModel model = planarArm();
    SUBCASE("identical configurations") {
        CHECK(tcpDistance(model, config2(0.4, -0.3), config2(0.4, -0.3), 0) == 0.0);
    }
    SUBCASE("fk oracle: (2,0) vs (0,2)") {
        CHECK(tcpDistance(model, config2(0, 0), config2(M_PI / 2, 0), 0) ==
              doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("symmetric on random pairs") {
        Rng rng(3);
        for (int t = 0; t < 20; ++t) {
            const JointConfig a = config2(rng.uniform(-3, 3), rng.uniform(-3, 3));
            const JointConfig b = config2(rng.uniform(-3, 3), rng.uniform(-3, 3));
            CHECK(tcpDistance(model, a, b, 0) == tcpDistance(model, b, a, 0));
        }
    }
    SUBCASE("unknown chain id") {
        CHECK_THROWS_AS(tcpDistance(model, config2(0, 0), config2(0, 0), 5),
                        std::out_of_range);
    }
}

TEST_CASE("model validation catches malformed chains") {
    Chain c;
    c.name = "bad";
    JointSpec j;
    j.axis = Eigen::Vector3d::UnitZ();
    j.offset = Eigen::Vector3d(1, 0, 0);
    j.lower = 1.0;
    j.upper = -1.0;  // inverted
    c.joints = {j};
    CHECK_THROWS_AS(RobotModel({c}).validate(), std::invalid_argument);

    c.joints[0].lower = -7.0;  // beyond 2*pi
    c.joints[0].upper = 1.0;
    CHECK_THROWS_AS(RobotModel({c}).validate(), std::invalid_argument);

    c.joints[0].lower = -1.0;
    c.joints[0].link_boxes.push_back({Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero()});
    CHECK_THROWS_AS(RobotModel({c}).validate(), std::invalid_argument);
}
