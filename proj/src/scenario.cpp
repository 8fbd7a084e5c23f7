#include "pgmp/scenario.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace pgmp {

namespace {

using nlohmann::json;

Eigen::Vector3d vec3(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3)
        throw std::runtime_error(what + " must be an array of 3 numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Eigen::VectorXd vecN(const json& j, const std::string& what) {
    if (!j.is_array()) throw std::runtime_error(what + " must be an array of numbers");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
    return v;
}

Eigen::Matrix3d rotationRpy(const Eigen::Vector3d& rpy) {
    return (Eigen::AngleAxisd(rpy.z(), Eigen::Vector3d::UnitZ()) *
            Eigen::AngleAxisd(rpy.y(), Eigen::Vector3d::UnitY()) *
            Eigen::AngleAxisd(rpy.x(), Eigen::Vector3d::UnitX()))
        .toRotationMatrix();
}

BoxGeometry boxGeometry(const json& j, const std::string& what) {
    BoxGeometry b;
    b.center = vec3(j.at("center"), what + ".center");
    b.half_extents = vec3(j.at("half_extents"), what + ".half_extents");
    return b;
}

Obb obb(const json& j, const std::string& what) {
    Obb b;
    b.center = vec3(j.at("center"), what + ".center");
    b.half_extents = vec3(j.at("half_extents"), what + ".half_extents");
    if (j.contains("rpy")) b.rotation = rotationRpy(vec3(j.at("rpy"), what + ".rpy"));
    return b;
}

RobotModel parseRobot(const json& j) {
    std::vector<Chain> chains;
    for (const json& jc : j.at("chains")) {
        Chain c;
        c.name = jc.value("name", "chain" + std::to_string(chains.size()));
        if (jc.contains("base")) {
            const json& jb = jc.at("base");
            Eigen::Isometry3d base = Eigen::Isometry3d::Identity();
            if (jb.contains("position"))
                base.translation() = vec3(jb.at("position"), "base.position");
            if (jb.contains("rpy"))
                base.linear() = rotationRpy(vec3(jb.at("rpy"), "base.rpy"));
            c.base = base;
        }
        for (const json& jj : jc.at("joints")) {
            JointSpec spec;
            spec.axis = vec3(jj.at("axis"), "joint.axis").normalized();
            spec.offset = vec3(jj.at("offset"), "joint.offset");
            const json& lim = jj.at("limits");
            if (!lim.is_array() || lim.size() != 2)
                throw std::runtime_error("joint.limits must be [lo, hi]");
            spec.lower = lim[0].get<double>();
            spec.upper = lim[1].get<double>();
            if (jj.contains("link_boxes"))
                for (const json& jb : jj.at("link_boxes"))
                    spec.link_boxes.push_back(boxGeometry(jb, "link_box"));
            c.joints.push_back(std::move(spec));
        }
        if (jc.contains("tcp_offset"))
            c.tcp_offset = vec3(jc.at("tcp_offset"), "tcp_offset");
        chains.push_back(std::move(c));
    }
    return RobotModel(std::move(chains));
}

void parseSelfCollisionPairs(const json& j, Scene& scene) {
    if (j.is_string()) {
        const std::string mode = j.get<std::string>();
        if (mode == "none") return;
        if (mode == "all") {
            const int links = scene.robot.linkCount();
            for (int a = 0; a < links; ++a)
                for (int b = a + 1; b < links; ++b)
                    if (!scene.robot.adjacentLinks(a, b))
                        scene.self_collision_pairs.emplace_back(a, b);
            return;
        }
        throw std::runtime_error("self_collision_pairs must be \"none\", \"all\" or a pair list");
    }
    for (const json& jp : j) {
        if (!jp.is_array() || jp.size() != 2)
            throw std::runtime_error("self_collision_pairs entries must be [i, j]");
        scene.self_collision_pairs.emplace_back(jp[0].get<int>(), jp[1].get<int>());
    }
}

PlannerParams parsePlanner(const json& j, const Scene& scene) {
    PlannerParams p;
    p.check_resolution = scene.check_resolution;
    if (j.is_null()) return p;
    p.step_size = j.value("step_size", p.step_size);
    p.p_bias = j.value("p_bias", p.p_bias);
    p.max_iterations = j.value("max_iterations", p.max_iterations);
    p.check_resolution = j.value("check_resolution", p.check_resolution);
    p.gmm_components = j.value("gmm_components", p.gmm_components);
    p.p_goal = j.value("p_goal", p.p_goal);
    if (j.contains("exemplars")) {
        const json& je = j.at("exemplars");
        p.exemplars.dataset_size = je.value("dataset_size", p.exemplars.dataset_size);
        p.exemplars.sigma_init = je.value("sigma_init", p.exemplars.sigma_init);
        p.exemplars.sigma_max = je.value("sigma_max", p.exemplars.sigma_max);
        p.exemplars.max_attempts = je.value("max_attempts", p.exemplars.max_attempts);
    }
    p.validate();
    return p;
}

OptimizerParams parseOptimizer(const json& j, const PlannerParams& planner) {
    OptimizerParams p;
    p.step_size = planner.step_size;
    p.check_resolution = planner.check_resolution;
    if (j.is_null()) return p;
    p.shortcut_iterations = j.value("shortcut_iterations", p.shortcut_iterations);
    p.dp_threshold = j.value("dp_threshold", p.dp_threshold);
    p.alpha_max = j.value("alpha_max", p.alpha_max);
    p.spline_samples = j.value("spline_samples", p.spline_samples);
    p.step_size = j.value("step_size", p.step_size);
    p.check_resolution = j.value("check_resolution", p.check_resolution);
    if (j.contains("dp_metric")) {
        const std::string metric = j.at("dp_metric").get<std::string>();
        if (metric == "task_space")
            p.dp_metric = DeviationMetric::TaskSpace;
        else if (metric == "joint_space")
            p.dp_metric = DeviationMetric::JointSpace;
        else
            throw std::runtime_error("optimizer.dp_metric must be task_space or joint_space");
    }
    p.strict_curve_check = j.value("strict_curve_check", p.strict_curve_check);
    p.validate();
    return p;
}

}  // namespace

Scenario loadScenario(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw std::runtime_error("cannot open scenario file '" + filename + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("scenario '" + filename + "': " + e.what());
    }

    Scenario s;
    try {
        s.name = j.value("name", filename);
        s.scene.robot = parseRobot(j.at("robot"));
        s.scene.robot.validate();

        if (j.contains("grid")) {
            const json& jg = j.at("grid");
            const Eigen::Vector3d origin =
                jg.contains("origin") ? vec3(jg.at("origin"), "grid.origin")
                                      : Eigen::Vector3d::Zero();
            s.scene.grid = OccupancyGrid(origin, jg.value("resolution", 0.01));
            if (jg.contains("occupied"))
                for (const json& jk : jg.at("occupied")) {
                    if (!jk.is_array() || jk.size() != 3)
                        throw std::runtime_error("grid.occupied entries must be [i, j, k]");
                    s.scene.grid.insert(
                        {jk[0].get<std::int32_t>(), jk[1].get<std::int32_t>(),
                         jk[2].get<std::int32_t>()});
                }
            if (jg.contains("boxes"))
                for (const json& jb : jg.at("boxes"))
                    s.scene.grid.voxelizeBox(obb(jb, "grid.box"));
        }
        if (j.contains("static_boxes"))
            for (const json& jb : j.at("static_boxes"))
                s.scene.static_boxes.push_back(obb(jb, "static_box"));

        s.scene.d_safe = j.value("d_safe", s.scene.d_safe);
        s.scene.check_resolution = j.value("check_resolution", s.scene.check_resolution);
        if (j.contains("self_collision_pairs"))
            parseSelfCollisionPairs(j.at("self_collision_pairs"), s.scene);
        if (j.contains("attachment")) {
            AttachedBox a;
            a.chain = j.at("attachment").value("chain", 0);
            a.box = boxGeometry(j.at("attachment"), "attachment");
            s.scene.attachment = a;
        }
        s.scene.validate();

        s.planner = parsePlanner(j.contains("planner") ? j.at("planner") : json(), s.scene);
        s.optimizer =
            parseOptimizer(j.contains("optimizer") ? j.at("optimizer") : json(), s.planner);

        if (!j.contains("queries") || j.at("queries").empty())
            throw std::runtime_error("scenario must list at least one query");
        const int n = s.scene.robot.dimension();
        for (const json& jq : j.at("queries")) {
            Query q;
            q.label = jq.value("label", "q" + std::to_string(s.queries.size()));
            q.init = vecN(jq.at("init"), "query.init");
            q.goal = vecN(jq.at("goal"), "query.goal");
            if (q.init.size() != n || q.goal.size() != n)
                throw std::runtime_error("query '" + q.label + "': endpoint dimension != " +
                                         std::to_string(n));
            for (const char* side : {"init", "goal"}) {
                const JointConfig& cfg = side == std::string("init") ? q.init : q.goal;
                if (!s.scene.robot.withinLimits(cfg))
                    throw std::runtime_error("query '" + q.label + "': " + side +
                                             " violates joint limits");
                if (!configIsFree(s.scene, cfg))
                    throw std::runtime_error("query '" + q.label + "': " + side +
                                             " is in collision");
            }
            s.queries.push_back(std::move(q));
        }
    } catch (const json::exception& e) {
        throw std::runtime_error("scenario '" + filename + "': " + e.what());
    }
    return s;
}

}  // namespace pgmp
