#pragma once

#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "pgmp/geometry.hpp"

namespace pgmp {

using JointConfig = Eigen::VectorXd;

// Collision box expressed in the frame of the link that owns it.
struct BoxGeometry {
    Eigen::Vector3d center{Eigen::Vector3d::Zero()};
    Eigen::Vector3d half_extents{Eigen::Vector3d::Zero()};
};

// Revolute joint plus the link it drives. The joint rotates about `axis`
// in the parent frame; `offset` then translates to the next joint. Link
// collision geometry lives in the post-rotation frame, so a unit link
// along +x with offset (1,0,0) puts its box center at (0.5,0,0).
struct JointSpec {
    Eigen::Vector3d axis{Eigen::Vector3d::UnitZ()};
    Eigen::Vector3d offset{Eigen::Vector3d::Zero()};
    double lower{-M_PI};
    double upper{M_PI};
    std::vector<BoxGeometry> link_boxes;
};

struct Chain {
    std::string name;
    Eigen::Isometry3d base{Eigen::Isometry3d::Identity()};
    std::vector<JointSpec> joints;
    // Optional fixed translation from the last joint frame to the TCP.
    Eigen::Vector3d tcp_offset{Eigen::Vector3d::Zero()};
};

// Serial-chain robot, single or multi arm. One link per joint; links are
// indexed globally in chain order.
class RobotModel {
public:
    RobotModel() = default;
    explicit RobotModel(std::vector<Chain> chains);

    int dimension() const { return dimension_; }
    int chainCount() const { return static_cast<int>(chains_.size()); }
    const Chain& chain(int i) const { return chains_.at(i); }
    const std::vector<Chain>& chains() const { return chains_; }

    int linkCount() const { return dimension_; }
    int linkIndex(int chain, int joint) const { return chain_start_.at(chain) + joint; }
    int chainOfLink(int link) const;
    int chainOfJoint(int joint) const { return chainOfLink(joint); }
    int chainStart(int chain) const { return chain_start_.at(chain); }

    // Same chain, consecutive joints.
    bool adjacentLinks(int a, int b) const;

    const Eigen::VectorXd& lowerLimits() const { return lower_; }
    const Eigen::VectorXd& upperLimits() const { return upper_; }
    bool withinLimits(const JointConfig& q) const;
    JointConfig clampToLimits(const JointConfig& q) const;

    // Throws std::invalid_argument on malformed models (bad limits,
    // non-positive box extents, non-unit axes).
    void validate() const;

private:
    std::vector<Chain> chains_;
    std::vector<int> chain_start_;
    Eigen::VectorXd lower_;
    Eigen::VectorXd upper_;
    int dimension_{0};
};

// World-frame result of forward kinematics.
struct LinkPoseSet {
    std::vector<Eigen::Isometry3d> link_poses;        // one per link
    std::vector<std::vector<Obb>> link_boxes;         // world boxes, one list per link
    std::vector<Eigen::Isometry3d> tcp_poses;         // one per chain
    std::vector<Eigen::Vector3d> tcp;                 // TCP origins, one per chain
    bool within_limits{true};
};

// Chains rotation-about-axis then fixed translation per joint. Throws on
// dimension mismatch or non-finite joint values; out-of-limit values are
// allowed and only flagged in the result.
LinkPoseSet forwardKinematics(const RobotModel& model, const JointConfig& q);

// Euclidean distance between one chain's TCP positions at two configurations.
double tcpDistance(const RobotModel& model, const JointConfig& a, const JointConfig& b,
                   int chain_id);

}  // namespace pgmp
