#pragma once

#include <utility>
#include <vector>

#include "pgmp/collision.hpp"
#include "pgmp/path.hpp"
#include "pgmp/rng.hpp"

namespace pgmp {

enum class DeviationMetric { TaskSpace, JointSpace };

struct OptimizerParams {
    int shortcut_iterations{200};
    double dp_threshold{0.005};            // meters (task space) or radians (joint space)
    double alpha_max{M_PI};                // rad/m
    DeviationMetric dp_metric{DeviationMetric::TaskSpace};
    int spline_samples{20};                // dense samples per spline span
    double step_size{0.1};                 // radians, shortcut reconnection step
    double check_resolution{0.05};         // radians, edge validation
    bool strict_curve_check{false};        // also collision-check the dense spline samples

    void validate() const;
};

// Clamped B-spline over the waypoints (degree 3, reduced for short paths).
struct BSpline {
    int degree{1};
    std::vector<double> knots;
    std::vector<JointConfig> control_points;

    Eigen::VectorXd evaluate(double u) const;  // de Boor recursion, u in [0, 1]
    int spanCount() const { return static_cast<int>(control_points.size()) - degree; }
};

struct Trajectory {
    Path source;
    BSpline spline;
    std::vector<JointConfig> samples;  // dense evaluation over [0, 1]
};

// Restart-node shortcutting: repeatedly tries a direct step-wise
// reconnection between two random waypoints and splices it in when the
// replacement is strictly shorter in L1. Never lengthens the path.
Path shortcutOptimize(const Scene& scene, const Path& path, int iterations, Rng& rng,
                      const OptimizerParams& params);

// Recursive polyline simplification. Deviation is measured between a
// waypoint and the chord of its segment's endpoints, either through chain
// TCP positions (meters) or directly in joint space (radians). Every new
// edge is re-validated; edges that fail get their waypoints back.
Path douglasPeucker(const Path& path, const Scene& scene, const OptimizerParams& params);

// Per-waypoint, per-joint rotation rate (rad per meter of TCP travel) and
// the reversal metric built from it. Row 0 of alpha and rows 0 and last of
// g are zero padding. Zero TCP displacement yields an infinite alpha.
struct JointRotationMetrics {
    Eigen::MatrixXd alpha;  // size x n
    Eigen::MatrixXd g;      // size x n
    bool has_infinite{false};
};

JointRotationMetrics jointRotationMetrics(const RobotModel& model, const Path& path);

struct RefineResult {
    Path path;
    int refined_joints{0};
    std::vector<std::pair<int, int>> unresolved;  // (waypoint, joint) still violating
};

// Removes joint reversals whose G meets alpha_max by re-interpolating the
// offending joint value between its neighbours at the TCP arc-length
// fraction. Edits that break an adjacent edge are rolled back and reported.
RefineResult jointRotationRefine(const Scene& scene, const Path& path,
                                 const OptimizerParams& params);

// Clamped cubic B-spline through the waypoints as control points; the knot
// multiplicity pins the curve to the first and last waypoint.
Trajectory fitBspline(const Path& path, const OptimizerParams& params);

struct StageMetrics {
    int raw_nodes{0};
    double raw_len_rad{0.0};
    int shortcut_nodes{0};
    double shortcut_len_rad{0.0};
    int dp_nodes{0};
    double dp_len_rad{0.0};
    int refined_joints{0};
    int unresolved_joints{0};
};

struct OptimizeResult {
    Trajectory trajectory;
    StageMetrics metrics;
    bool curve_checked{false};
    bool curve_collision_free{true};
};

// Full pipeline: shortcut, simplify, refine joint reversals, fit the spline.
OptimizeResult optimize(const Scene& scene, const Path& path, const OptimizerParams& params,
                        Rng& rng);

}  // namespace pgmp
