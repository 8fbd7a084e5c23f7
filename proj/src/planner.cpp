#include "pgmp/planner.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "pgmp/samplers.hpp"

namespace pgmp {

namespace {

constexpr double kConnectTolerance = 1e-9;  // per-joint meeting tolerance
constexpr double kSigmaFloor = 0.01;        // radians

double seconds(std::chrono::steady_clock::time_point from,
               std::chrono::steady_clock::time_point to) {
    return std::chrono::duration<double>(to - from).count();
}

}  // namespace

std::vector<JointConfig> Tree::branchToRoot(int i) const {
    std::vector<JointConfig> out;
    for (int k = i; k >= 0; k = nodes[k].parent) out.push_back(nodes[k].q);
    return out;
}

std::string samplerName(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::PriorGuided: return "prior";
        case SamplerKind::Uniform: return "uniform";
        case SamplerKind::GoalBias: return "goal-bias";
    }
    return "unknown";
}

SamplerKind samplerFromName(const std::string& name) {
    if (name == "prior") return SamplerKind::PriorGuided;
    if (name == "uniform") return SamplerKind::Uniform;
    if (name == "goal-bias") return SamplerKind::GoalBias;
    throw std::invalid_argument("unknown sampler '" + name + "'");
}

void PlannerParams::validate() const {
    if (!(step_size > 0.0)) throw std::invalid_argument("planner: step_size must be positive");
    if (p_bias < 0.0 || p_bias > 1.0)
        throw std::invalid_argument("planner: p_bias must lie in [0, 1]");
    if (max_iterations < 1)
        throw std::invalid_argument("planner: max_iterations must be at least 1");
    if (!(check_resolution > 0.0))
        throw std::invalid_argument("planner: check_resolution must be positive");
    if (gmm_components < 1)
        throw std::invalid_argument("planner: gmm_components must be at least 1");
    if (p_goal < 0.0 || p_goal > 1.0)
        throw std::invalid_argument("planner: p_goal must lie in [0, 1]");
    exemplars.validate();
}

double manhattanDistance(const JointConfig& a, const JointConfig& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("manhattanDistance: dimensions differ");
    return (a - b).lpNorm<1>();
}

int nearestNode(const Tree& tree, const JointConfig& q) {
    int best = 0;
    double best_d = manhattanDistance(tree.nodes[0].q, q);
    for (int i = 1; i < tree.size(); ++i) {
        const double d = manhattanDistance(tree.nodes[i].q, q);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

JointConfig extendTree(Tree& tree, int near_index, const JointConfig& target,
                       const Scene& scene, double step_size, double check_resolution) {
    JointConfig current = tree.config(near_index);
    int current_index = near_index;
    double dist = manhattanDistance(current, target);
    while (dist > 0.0) {
        const double remaining = (target - current).norm();
        JointConfig next =
            remaining <= step_size
                ? target
                : JointConfig(current + (step_size / remaining) * (target - current));
        const double next_dist = manhattanDistance(next, target);
        if (next_dist >= dist) break;  // no further progress toward the sample
        if (!segmentIsFree(scene, current, next, check_resolution)) break;
        tree.nodes.push_back({next, current_index});
        current_index = tree.size() - 1;
        current = std::move(next);
        dist = next_dist;
    }
    return current;
}

JointConfig currentInfoSampling(double total_distance, double tree_distance,
                                const JointConfig& q_init, const JointConfig& q_goal,
                                Rng& rng) {
    if (!(total_distance > 0.0))
        throw std::invalid_argument("currentInfoSampling: total distance must be positive");
    if (tree_distance < 0.0)
        throw std::invalid_argument("currentInfoSampling: tree distance must be non-negative");
    const double rate =
        std::clamp((total_distance - tree_distance) / total_distance, 0.0, 1.0);
    const JointConfig mean = q_init + rate * (q_goal - q_init);
    const double sigma = std::max(1.0 - rate, kSigmaFloor);
    return mean + sigma * rng.normalVector(static_cast<int>(mean.size()));
}

PlanResult plan(const Scene& scene, const JointConfig& q_init, const JointConfig& q_goal,
                const PlannerParams& params, Rng& rng, const PriorModels* priors) {
    params.validate();
    const int n = scene.robot.dimension();
    if (q_init.size() != n || q_goal.size() != n)
        throw std::invalid_argument("plan: endpoint dimension mismatch");
    if (!scene.robot.withinLimits(q_init) || !scene.robot.withinLimits(q_goal))
        throw std::invalid_argument("plan: endpoint outside joint limits");
    if (!configIsFree(scene, q_init)) throw std::invalid_argument("plan: q_init in collision");
    if (!configIsFree(scene, q_goal)) throw std::invalid_argument("plan: q_goal in collision");

    PlanResult result;
    if ((q_init - q_goal).lpNorm<Eigen::Infinity>() <= kConnectTolerance) {
        result.success = true;
        result.path = Path::fromWaypoints({q_init});
        return result;
    }

    // sampling priors around both endpoints
    Fgmm init_model, goal_model;
    if (params.sampler == SamplerKind::PriorGuided) {
        const auto fit_start = std::chrono::steady_clock::now();
        if (priors) {
            init_model = priors->init_model;
            goal_model = priors->goal_model;
        } else {
            const ExemplarResult init_data =
                collectExemplars(scene, q_init, params.exemplars, rng);
            init_model = emFit(init_data.dataset, params.gmm_components, EmOptions{}, rng).model;
            const ExemplarResult goal_data =
                collectExemplars(scene, q_goal, params.exemplars, rng);
            goal_model = emFit(goal_data.dataset, params.gmm_components, EmOptions{}, rng).model;
        }
        result.fit_time_s = seconds(fit_start, std::chrono::steady_clock::now());
    }

    const double total_distance = manhattanDistance(q_init, q_goal);
    const Eigen::VectorXd& lower = scene.robot.lowerLimits();
    const Eigen::VectorXd& upper = scene.robot.upperLimits();

    Tree tree_init(q_init), tree_goal(q_goal);
    Tree* active = &tree_init;
    Tree* passive = &tree_goal;
    bool active_is_init = true;
    // minimum Manhattan distance from each tree to the opposite root
    double min_dist_init = total_distance;
    double min_dist_goal = total_distance;

    const auto grow_start = std::chrono::steady_clock::now();
    for (int iter = 0; iter < params.max_iterations; ++iter) {
        result.iterations = iter + 1;
        const JointConfig& active_root = active_is_init ? q_init : q_goal;
        const JointConfig& active_target = active_is_init ? q_goal : q_init;
        double& active_min = active_is_init ? min_dist_init : min_dist_goal;
        double& passive_min = active_is_init ? min_dist_goal : min_dist_init;

        JointConfig sample;
        switch (params.sampler) {
            case SamplerKind::PriorGuided:
                if (rng.uniform01() < params.p_bias) {
                    // the model built around the configuration this tree grows toward
                    const Fgmm& model = active_is_init ? goal_model : init_model;
                    sample = scene.robot.clampToLimits(sampleFgmm(model, rng));
                } else {
                    sample = scene.robot.clampToLimits(currentInfoSampling(
                        total_distance, active_min, active_root, active_target, rng));
                }
                break;
            case SamplerKind::Uniform:
                sample = uniformSample(lower, upper, rng);
                break;
            case SamplerKind::GoalBias:
                sample = goalBiasSample(lower, upper, active_target, params.p_goal, rng);
                break;
        }

        const int near_a = nearestNode(*active, sample);
        const int before_a = active->size();
        const JointConfig reach_a = extendTree(*active, near_a, sample, scene,
                                               params.step_size, params.check_resolution);
        for (int i = before_a; i < active->size(); ++i)
            active_min =
                std::min(active_min, manhattanDistance(active->config(i), active_target));

        const int near_b = nearestNode(*passive, reach_a);
        const int before_b = passive->size();
        const JointConfig reach_b = extendTree(*passive, near_b, reach_a, scene,
                                               params.step_size, params.check_resolution);
        for (int i = before_b; i < passive->size(); ++i)
            passive_min =
                std::min(passive_min, manhattanDistance(passive->config(i), active_root));

        if ((reach_a - reach_b).lpNorm<Eigen::Infinity>() <= kConnectTolerance) {
            const int idx_init = active_is_init ? (active->size() > before_a ? active->size() - 1
                                                                             : near_a)
                                                : (passive->size() > before_b
                                                       ? passive->size() - 1
                                                       : near_b);
            const int idx_goal = active_is_init ? (passive->size() > before_b
                                                       ? passive->size() - 1
                                                       : near_b)
                                                : (active->size() > before_a ? active->size() - 1
                                                                             : near_a);
            std::vector<JointConfig> init_side = tree_init.branchToRoot(idx_init);
            std::reverse(init_side.begin(), init_side.end());
            std::vector<JointConfig> goal_side = tree_goal.branchToRoot(idx_goal);
            init_side.insert(init_side.end(), goal_side.begin(), goal_side.end());
            result.path = Path::fromWaypoints(std::move(init_side));
            result.success = true;
            break;
        }

        std::swap(active, passive);
        active_is_init = !active_is_init;
    }
    result.plan_time_s = seconds(grow_start, std::chrono::steady_clock::now());
    result.extended_nodes = tree_init.size() + tree_goal.size() - 2;
    return result;
}

}  // namespace pgmp
