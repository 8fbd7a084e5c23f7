#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pgmp/bench.hpp"
#include "pgmp/planner.hpp"
#include "pgmp/scenario.hpp"

using namespace pgmp;

namespace {

RobotModel planarArm(double q1_lo = -M_PI, double q1_hi = M_PI, double q2_lo = -M_PI,
                     double q2_hi = M_PI) {
    Chain c;
    c.name = "arm";
    JointSpec j1;
    j1.axis = Eigen::Vector3d::UnitZ();
    j1.offset = Eigen::Vector3d(1, 0, 0);
    j1.lower = q1_lo;
    j1.upper = q1_hi;
    j1.link_boxes.push_back({Eigen::Vector3d(0.5, 0, 0), Eigen::Vector3d(0.5, 0.02, 0.02)});
    JointSpec j2 = j1;
    j2.lower = q2_lo;
    j2.upper = q2_hi;
    c.joints = {j1, j2};
    return RobotModel({c});
}

Scene emptyScene() {
    Scene s;
    s.robot = planarArm();
    s.grid = OccupancyGrid(Eigen::Vector3d::Zero(), 0.01);
    return s;
}

// q1 band |q1| < acos(0.5) is blocked by link 1 alone; the two sides are
// provably disconnected within these limits.
Scene splitScene() {
    Scene s;
    s.robot = planarArm(-1.3, 1.3, -3.0, 3.0);
    s.grid = OccupancyGrid(Eigen::Vector3d::Zero(), 0.01);
    for (int y = -2000; y < 2000; ++y)
        for (int z = -3; z < 3; ++z) s.grid.insert({50, y, z});
    return s;
}

JointConfig config2(double a, double b) {
    JointConfig q(2);
    q << a, b;
    return q;
}

PlannerParams fastParams() {
    PlannerParams p;
    p.exemplars.dataset_size = 80;  // keep unit tests quick
    return p;
}

void checkPathValid(const Scene& scene, const Path& path, const JointConfig& q_init,
                    const JointConfig& q_goal, double check_resolution) {
    REQUIRE(path.size() >= 1);
    CHECK(path.front() == q_init);
    CHECK(path.back() == q_goal);
    for (int i = 1; i < path.size(); ++i)
        CHECK(segmentIsFree(scene, path[i - 1], path[i], check_resolution));
}

}  // namespace

TEST_CASE("manhattan distance") {
    CHECK(manhattanDistance(config2(0, 0), config2(1, -2)) == 3.0);
    CHECK(manhattanDistance(config2(0.3, -0.7), config2(0.3, -0.7)) == 0.0);
    Rng rng(1);
    for (int t = 0; t < 30; ++t) {
        const JointConfig a = config2(rng.uniform(-5, 5), rng.uniform(-5, 5));
        const JointConfig b = config2(rng.uniform(-5, 5), rng.uniform(-5, 5));
        const JointConfig c = config2(rng.uniform(-5, 5), rng.uniform(-5, 5));
        CHECK(manhattanDistance(a, c) <=
              manhattanDistance(a, b) + manhattanDistance(b, c) + 1e-12);
        CHECK(manhattanDistance(a, b) == manhattanDistance(b, a));
    }
    CHECK_THROWS_AS(manhattanDistance(config2(0, 0), Eigen::VectorXd::Zero(3)),
                    std::invalid_argument);
}

TEST_CASE("nearest node") {
    Tree tree(config2(0, 0));
    CHECK(nearestNode(tree, config2(5, 5)) == 0);
    tree.nodes.push_back({config2(1, 1), 0});
    CHECK(nearestNode(tree, config2(0.9, 0.9)) == 1);  // 0.2 beats 1.8
    // equidistant: (1,0) is 1.0 from both -> lowest index wins
    Tree tie(config2(0, 0));
    tie.nodes.push_back({config2(2, 0), 0});
    CHECK(nearestNode(tie, config2(1, 0)) == 0);
}

TEST_CASE("extend") {
    const Scene empty = emptyScene();

    SUBCASE("single-step reach appends the sample") {
        Tree tree(config2(0, 0));
        const JointConfig sample = config2(0.05, 0.02);
        const JointConfig reached = extendTree(tree, 0, sample, empty, 0.1, 0.05);
        CHECK(reached == sample);
        CHECK(tree.size() == 2);
        CHECK(tree.config(1) == sample);
    }
    SUBCASE("degenerate sample returns the node untouched") {
        Tree tree(config2(0.4, 0.4));
        const JointConfig reached = extendTree(tree, 0, config2(0.4, 0.4), empty, 0.1, 0.05);
        CHECK(reached == config2(0.4, 0.4));
        CHECK(tree.size() == 1);
    }
    SUBCASE("multi-step walk reaches a distant sample") {
        Tree tree(config2(0, 0));
        const JointConfig sample = config2(1.0, 0.5);
        const JointConfig reached = extendTree(tree, 0, sample, empty, 0.1, 0.05);
        CHECK(reached == sample);
        CHECK(tree.size() > 5);
        // every node sits on the straight segment
        for (int i = 1; i < tree.size(); ++i) {
            const double t = tree.config(i)[0] / 1.0;
            CHECK(tree.config(i)[1] == doctest::Approx(0.5 * t).epsilon(1e-9));
        }
    }
    SUBCASE("obstacle bisecting the segment stops the walk at the boundary") {
        const Scene split = splitScene();
        Tree tree(config2(1.25, 2.5));
        const JointConfig target = config2(-1.25, 2.5);
        const JointConfig reached = extendTree(tree, 0, target, split, 0.05, 0.02);
        CHECK(configIsFree(split, reached));
        // reached lies on the segment
        CHECK(reached[1] == doctest::Approx(2.5).epsilon(1e-9));
        const double t = (reached[0] - 1.25) / (-2.5);
        CHECK(t >= 0.0);
        CHECK(t < 1.0);
        // the next step would collide
        JointConfig next = reached;
        next[0] -= 0.05;
        CHECK_FALSE(segmentIsFree(split, reached, next, 0.02));
        // fine-resolution oracle: the free/blocked boundary is within one
        // step of the reached configuration
        double boundary = 1.25;
        for (double q1 = 1.25; q1 >= -1.25; q1 -= 0.005) {
            if (!configIsFree(split, config2(q1, 2.5))) break;
            boundary = q1;
        }
        CHECK(std::abs(reached[0] - boundary) <= 0.05 + 1e-9);
    }
}

TEST_CASE("current information sampling") {
    const JointConfig q_init = config2(0, 0), q_goal = config2(2, 0);

    SUBCASE("no progress keeps the mean at the start with unit spread") {
        Rng rng(1);
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(2);
        const int draws = 4000;
        for (int i = 0; i < draws; ++i)
            acc += currentInfoSampling(2.0, 2.0, q_init, q_goal, rng);
        CHECK(std::abs(acc[0] / draws - 0.0) < 0.1);
    }
    SUBCASE("at the goal the spread collapses to the floor") {
        Rng rng(2);
        for (int i = 0; i < 200; ++i) {
            const JointConfig s = currentInfoSampling(2.0, 0.0, q_init, q_goal, rng);
            CHECK((s - q_goal).lpNorm<Eigen::Infinity>() < 0.06);  // sigma floor 0.01
        }
    }
    SUBCASE("halfway: mean at the midpoint, spread one half") {
        Rng rng(3);
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(2);
        double acc2 = 0.0;
        const int draws = 8000;
        for (int i = 0; i < draws; ++i) {
            const JointConfig s = currentInfoSampling(2.0, 1.0, q_init, q_goal, rng);
            acc += s;
            acc2 += (s[0] - 1.0) * (s[0] - 1.0);
        }
        CHECK(acc[0] / draws == doctest::Approx(1.0).epsilon(0.05));
        CHECK(std::sqrt(acc2 / draws) == doctest::Approx(0.5).epsilon(0.05));
    }
    SUBCASE("errors") {
        Rng rng(4);
        CHECK_THROWS_AS(currentInfoSampling(0.0, 0.0, q_init, q_goal, rng),
                        std::invalid_argument);
    }
}

TEST_CASE("plan: degenerate and obstacle-free queries") {
    const Scene empty = emptyScene();
    PlannerParams params = fastParams();

    SUBCASE("identical endpoints") {
        Rng rng(1);
        const PlanResult r = plan(empty, config2(0.5, -0.5), config2(0.5, -0.5), params, rng);
        CHECK(r.success);
        CHECK(r.path.size() == 1);
        CHECK(r.extended_nodes == 0);
    }
    SUBCASE("empty scene connects distant configurations") {
        Rng rng(2);
        const JointConfig a = config2(-2.0, -1.5), b = config2(2.0, 1.5);
        const PlanResult r = plan(empty, a, b, params, rng);
        REQUIRE(r.success);
        checkPathValid(empty, r.path, a, b, params.check_resolution);
        CHECK(r.extended_nodes > 0);
    }
    SUBCASE("p_bias extremes still deliver valid paths") {
        for (double p_bias : {0.0, 1.0}) {
            PlannerParams p = fastParams();
            p.p_bias = p_bias;
            Rng rng(3);
            const JointConfig a = config2(-1.0, 0.5), b = config2(1.2, -0.8);
            const PlanResult r = plan(empty, a, b, p, rng);
            REQUIRE(r.success);
            checkPathValid(empty, r.path, a, b, p.check_resolution);
        }
    }
    SUBCASE("baseline samplers work") {
        for (SamplerKind kind : {SamplerKind::Uniform, SamplerKind::GoalBias}) {
            PlannerParams p = fastParams();
            p.sampler = kind;
            Rng rng(4);
            const JointConfig a = config2(-1.0, 0.0), b = config2(1.5, 1.0);
            const PlanResult r = plan(empty, a, b, p, rng);
            REQUIRE(r.success);
            checkPathValid(empty, r.path, a, b, p.check_resolution);
            CHECK(r.fit_time_s == 0.0);  // no mixture fitting for baselines
        }
    }
}

TEST_CASE("plan: invalid endpoints and exhausted budgets") {
    const Scene split = splitScene();
    PlannerParams params = fastParams();

    SUBCASE("endpoint errors") {
        Rng rng(1);
        CHECK_THROWS_AS(plan(split, config2(2.0, 0), config2(-1.25, 2.5), params, rng),
                        std::invalid_argument);  // outside limits
        CHECK_THROWS_AS(plan(split, config2(0.0, 0.0), config2(-1.25, 2.5), params, rng),
                        std::invalid_argument);  // in collision
    }
    SUBCASE("disconnected query exhausts the budget") {
        // flood-fill oracle proves the two sides live in different components
        const FloodFillReport report =
            floodFillOracle(split, 120, {config2(1.25, 2.5), config2(-1.25, 2.5)});
        REQUIRE(report.components >= 2);
        REQUIRE(report.probe_components[0] >= 0);
        REQUIRE(report.probe_components[1] >= 0);
        REQUIRE(report.probe_components[0] != report.probe_components[1]);

        PlannerParams p = fastParams();
        p.max_iterations = 120;
        p.exemplars.dataset_size = 40;
        Rng rng(2);
        const PlanResult r = plan(split, config2(1.25, 2.5), config2(-1.25, 2.5), p, rng);
        CHECK_FALSE(r.success);
        CHECK(r.iterations == 120);
        CHECK(r.path.empty());
        CHECK(r.extended_nodes >= 0);
    }
}

TEST_CASE("plan: seeded determinism") {
    const Scene empty = emptyScene();
    PlannerParams params = fastParams();
    const JointConfig a = config2(-1.8, 1.0), b = config2(1.8, -1.0);

    Rng rng_a(42), rng_b(42);
    const PlanResult ra = plan(empty, a, b, params, rng_a);
    const PlanResult rb = plan(empty, a, b, params, rng_b);
    REQUIRE(ra.success == rb.success);
    REQUIRE(ra.path.size() == rb.path.size());
    for (int i = 0; i < ra.path.size(); ++i) CHECK(ra.path[i] == rb.path[i]);
    CHECK(ra.extended_nodes == rb.extended_nodes);
    CHECK(ra.iterations == rb.iterations);
}

TEST_CASE("plan: pre-fitted priors are honoured") {
    const Scene empty = emptyScene();
    PlannerParams params = fastParams();
    const JointConfig a = config2(-1.0, -1.0), b = config2(1.0, 1.0);

    PriorModels priors;
    Rng fit_rng(9);
    const ExemplarResult da = collectExemplars(empty, a, params.exemplars, fit_rng);
    priors.init_model = emFit(da.dataset, params.gmm_components, EmOptions{}, fit_rng).model;
    const ExemplarResult db = collectExemplars(empty, b, params.exemplars, fit_rng);
    priors.goal_model = emFit(db.dataset, params.gmm_components, EmOptions{}, fit_rng).model;

    Rng rng(10);
    const PlanResult r = plan(empty, a, b, params, rng, &priors);
    REQUIRE(r.success);
    checkPathValid(empty, r.path, a, b, params.check_resolution);
}

TEST_CASE("plan: narrow passage scenario succeeds with the prior sampler") {
    const Scenario scenario =
        loadScenario(std::string(PGMP_SCENARIO_DIR) + "/narrow_passage_2dof.json");
    const Query& q = scenario.queries.front();
    int successes = 0;
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        Rng rng(seed);
        const PlanResult r = plan(scenario.scene, q.init, q.goal, scenario.planner, rng);
        if (!r.success) continue;
        ++successes;
        checkPathValid(scenario.scene, r.path, q.init, q.goal,
                       scenario.planner.check_resolution);
    }
    CHECK(successes == 3);
}
