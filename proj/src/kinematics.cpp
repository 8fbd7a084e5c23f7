#include "pgmp/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace pgmp {

RobotModel::RobotModel(std::vector<Chain> chains) : chains_(std::move(chains)) {
    chain_start_.reserve(chains_.size());
    for (const Chain& c : chains_) {
        chain_start_.push_back(dimension_);
        dimension_ += static_cast<int>(c.joints.size());
    }
    lower_.resize(dimension_);
    upper_.resize(dimension_);
    int k = 0;
    for (const Chain& c : chains_) {
        for (const JointSpec& j : c.joints) {
            lower_[k] = j.lower;
            upper_[k] = j.upper;
            ++k;
        }
    }
}

int RobotModel::chainOfLink(int link) const {
    if (link < 0 || link >= dimension_) throw std::out_of_range("link index out of range");
    int c = 0;
    while (c + 1 < static_cast<int>(chain_start_.size()) && chain_start_[c + 1] <= link) ++c;
    return c;
}

bool RobotModel::adjacentLinks(int a, int b) const {
    if (std::abs(a - b) != 1) return false;
    return chainOfLink(a) == chainOfLink(b);
}

bool RobotModel::withinLimits(const JointConfig& q) const {
    if (q.size() != dimension_) return false;
    return (q.array() >= lower_.array()).all() && (q.array() <= upper_.array()).all();
}

JointConfig RobotModel::clampToLimits(const JointConfig& q) const {
    return q.cwiseMax(lower_).cwiseMin(upper_);
}

void RobotModel::validate() const {
    if (chains_.empty()) throw std::invalid_argument("robot model has no chains");
    constexpr double kTwoPi = 2.0 * M_PI;
    for (const Chain& c : chains_) {
        if (c.joints.empty())
            throw std::invalid_argument("chain '" + c.name + "' has no joints");
        for (std::size_t i = 0; i < c.joints.size(); ++i) {
            const JointSpec& j = c.joints[i];
            const std::string where = "chain '" + c.name + "' joint " + std::to_string(i);
            if (!(j.lower < j.upper))
                throw std::invalid_argument(where + ": joint limits must satisfy lo < hi");
            if (j.lower < -kTwoPi - 1e-12 || j.upper > kTwoPi + 1e-12)
                throw std::invalid_argument(where + ": joint limits must lie within [-2pi, 2pi]");
            if (std::abs(j.axis.norm() - 1.0) > 1e-9)
                throw std::invalid_argument(where + ": rotation axis must be a unit vector");
            for (const BoxGeometry& b : j.link_boxes) {
                if (!(b.half_extents.array() > 0.0).all())
                    throw std::invalid_argument(where + ": link box half-extents must be positive");
            }
        }
    }
}

LinkPoseSet forwardKinematics(const RobotModel& model, const JointConfig& q) {
    if (q.size() != model.dimension())
        throw std::invalid_argument("forwardKinematics: configuration dimension " +
                                    std::to_string(q.size()) + " does not match model dimension " +
                                    std::to_string(model.dimension()));
    if (!q.allFinite())
        throw std::invalid_argument("forwardKinematics: non-finite joint value");

    LinkPoseSet out;
    out.link_poses.reserve(model.linkCount());
    out.link_boxes.reserve(model.linkCount());
    out.tcp.reserve(model.chainCount());
    out.within_limits = model.withinLimits(q);

    int k = 0;
    for (const Chain& c : model.chains()) {
        Eigen::Isometry3d frame = c.base;
        for (const JointSpec& j : c.joints) {
            frame = frame * Eigen::AngleAxisd(q[k], j.axis);
            // link frame: after the joint rotation, before the offset
            out.link_poses.push_back(frame);
            std::vector<Obb> boxes;
            boxes.reserve(j.link_boxes.size());
            for (const BoxGeometry& b : j.link_boxes) {
                Obb obb;
                obb.center = frame * b.center;
                obb.half_extents = b.half_extents;
                obb.rotation = frame.rotation();
                boxes.push_back(obb);
            }
            out.link_boxes.push_back(std::move(boxes));
            frame = frame * Eigen::Translation3d(j.offset);
            ++k;
        }
        const Eigen::Isometry3d tcp_pose = frame * Eigen::Translation3d(c.tcp_offset);
        out.tcp_poses.push_back(tcp_pose);
        out.tcp.push_back(tcp_pose.translation());
    }
    return out;
}

double tcpDistance(const RobotModel& model, const JointConfig& a, const JointConfig& b,
                   int chain_id) {
    if (chain_id < 0 || chain_id >= model.chainCount())
        throw std::out_of_range("tcpDistance: unknown chain id " + std::to_string(chain_id));
    const LinkPoseSet fa = forwardKinematics(model, a);
    const LinkPoseSet fb = forwardKinematics(model, b);
    return (fa.tcp[chain_id] - fb.tcp[chain_id]).norm();
}

}  // namespace pgmp
