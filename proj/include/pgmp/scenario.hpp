#pragma once

#include <string>
#include <vector>

#include "pgmp/collision.hpp"
#include "pgmp/optimizer.hpp"
#include "pgmp/planner.hpp"

namespace pgmp {

struct Query {
    std::string label;
    JointConfig init;
    JointConfig goal;
};

// A scene plus the planning queries and parameter overrides from one
// scenario file.
struct Scenario {
    std::string name;
    Scene scene;
    std::vector<Query> queries;
    PlannerParams planner;
    OptimizerParams optimizer;
};

// Parses and fully validates a scenario file (see scenarios/SCHEMA.md).
// Boxes listed under grid are voxelized at the grid resolution. Throws
// std::runtime_error with the offending file/field on any schema violation,
// and for every query whose endpoint collides or leaves its limits.
Scenario loadScenario(const std::string& filename);

}  // namespace pgmp
