#pragma once

#include <string>

#include "pgmp/collision.hpp"
#include "pgmp/exemplars.hpp"
#include "pgmp/fgmm.hpp"
#include "pgmp/path.hpp"
#include "pgmp/rng.hpp"

namespace pgmp {

// Search tree rooted at a fixed configuration. Node 0 is the root.
struct Tree {
    struct Node {
        JointConfig q;
        int parent{-1};
    };
    std::vector<Node> nodes;

    explicit Tree(const JointConfig& root) { nodes.push_back({root, -1}); }
    int size() const { return static_cast<int>(nodes.size()); }
    const JointConfig& config(int i) const { return nodes[i].q; }

    // Root-to-node configuration sequence.
    std::vector<JointConfig> branchToRoot(int i) const;
};

enum class SamplerKind { PriorGuided, Uniform, GoalBias };

std::string samplerName(SamplerKind kind);
SamplerKind samplerFromName(const std::string& name);

struct PlannerParams {
    double step_size{0.1};          // radians per extension step
    double p_bias{0.3};             // probability of prior-model sampling
    int max_iterations{50000};
    double check_resolution{0.05};  // radians, motion validation
    ExemplarParams exemplars;
    int gmm_components{2};
    double p_goal{0.05};            // goal-bias baseline only
    SamplerKind sampler{SamplerKind::PriorGuided};

    void validate() const;
};

struct PlanResult {
    bool success{false};
    Path path;
    int extended_nodes{0};
    int iterations{0};
    double plan_time_s{0.0};  // tree growth only
    double fit_time_s{0.0};   // exemplar collection + mixture fitting
};

// Pre-fitted sampling priors; supplying them skips exemplar collection
// inside plan().
struct PriorModels {
    Fgmm init_model;
    Fgmm goal_model;
};

// Sum of per-joint absolute differences.
double manhattanDistance(const JointConfig& a, const JointConfig& b);

// Index of the tree node closest to q in Manhattan distance; ties go to
// the lowest index.
int nearestNode(const Tree& tree, const JointConfig& q);

// Walks from the given node toward `target` in steps of step_size,
// validating and appending each step. Stops at the target, at the first
// collision, or as soon as a step no longer reduces the Manhattan distance
// to the target. Returns the configuration actually reached.
JointConfig extendTree(Tree& tree, int near_index, const JointConfig& target,
                       const Scene& scene, double step_size, double check_resolution);

// Draws around the straight init-goal line: progress `rate` moves the mean
// toward the goal while the spread 1 - rate shrinks (floored at 0.01 rad).
JointConfig currentInfoSampling(double total_distance, double tree_distance,
                                const JointConfig& q_init, const JointConfig& q_goal, Rng& rng);

// Bidirectional tree search with probabilistically mixed prior-model and
// tree-state sampling (or a baseline sampler, per params.sampler).
PlanResult plan(const Scene& scene, const JointConfig& q_init, const JointConfig& q_goal,
                const PlannerParams& params, Rng& rng, const PriorModels* priors = nullptr);

}  // namespace pgmp
