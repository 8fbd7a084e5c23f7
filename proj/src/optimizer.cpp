#include "pgmp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pgmp {

namespace {

double segmentSublengthL1(const Path& path, int i, int j) {
    double len = 0.0;
    for (int k = i + 1; k <= j; ++k)
        len += (path[k] - path[k - 1]).lpNorm<1>();
    return len;
}

// Step-wise straight connection from a to b; fills `steps` with the
// intermediate configurations plus b itself. Fails on the first blocked
// step.
bool connectDirect(const Scene& scene, const JointConfig& a, const JointConfig& b,
                   double step_size, double check_resolution,
                   std::vector<JointConfig>& steps) {
    steps.clear();
    JointConfig current = a;
    while ((current - b).lpNorm<Eigen::Infinity>() > 0.0) {
        const double remaining = (b - current).norm();
        JointConfig next = remaining <= step_size
                               ? b
                               : JointConfig(current + (step_size / remaining) * (b - current));
        if (!segmentIsFree(scene, current, next, check_resolution)) return false;
        steps.push_back(next);
        current = std::move(next);
    }
    return true;
}

double pointToChord(const Eigen::VectorXd& p, const Eigen::VectorXd& a,
                    const Eigen::VectorXd& b) {
    const Eigen::VectorXd d = b - a;
    const double len2 = d.squaredNorm();
    if (len2 < 1e-24) return (p - a).norm();
    const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
    return (p - a - t * d).norm();
}

std::vector<std::vector<Eigen::Vector3d>> tcpPositions(const RobotModel& model,
                                                       const Path& path) {
    std::vector<std::vector<Eigen::Vector3d>> tcp(path.size());
    for (int i = 0; i < path.size(); ++i) tcp[i] = forwardKinematics(model, path[i]).tcp;
    return tcp;
}

}  // namespace

void OptimizerParams::validate() const {
    if (shortcut_iterations < 0)
        throw std::invalid_argument("optimizer: shortcut_iterations must be non-negative");
    if (!(dp_threshold > 0.0))
        throw std::invalid_argument("optimizer: dp_threshold must be positive");
    if (!(alpha_max > 0.0)) throw std::invalid_argument("optimizer: alpha_max must be positive");
    if (spline_samples < 1)
        throw std::invalid_argument("optimizer: spline_samples must be at least 1");
    if (!(step_size > 0.0)) throw std::invalid_argument("optimizer: step_size must be positive");
    if (!(check_resolution > 0.0))
        throw std::invalid_argument("optimizer: check_resolution must be positive");
}

Path shortcutOptimize(const Scene& scene, const Path& path, int iterations, Rng& rng,
                      const OptimizerParams& params) {
    Path current = path;
    std::vector<JointConfig> steps;
    for (int it = 0; it < iterations; ++it) {
        const int m = current.size();
        if (m < 3) break;
        int i = static_cast<int>(rng.uniformInt(m));
        int j = static_cast<int>(rng.uniformInt(m));
        if (i == j) continue;
        if (i > j) std::swap(i, j);
        const double old_len = segmentSublengthL1(current, i, j);
        const double new_len = (current[j] - current[i]).lpNorm<1>();
        if (!(new_len < old_len)) continue;
        if (!connectDirect(scene, current[i], current[j], params.step_size,
                           params.check_resolution, steps))
            continue;
        std::vector<JointConfig> spliced;
        spliced.reserve(i + 1 + steps.size() + (m - j - 1));
        for (int k = 0; k <= i; ++k) spliced.push_back(current[k]);
        for (auto& q : steps) spliced.push_back(std::move(q));
        for (int k = j + 1; k < m; ++k) spliced.push_back(current[k]);
        current = Path::fromWaypoints(std::move(spliced));
    }
    return current;
}

namespace {

// Recursive keep-mark pass shared by both deviation metrics. `deviation`
// maps (index, segment begin, segment end) to the distance measure.
template <typename DeviationFn>
void dpMark(int a, int b, double threshold, std::vector<char>& keep, DeviationFn&& deviation) {
    if (b - a < 2) return;
    int arg = -1;
    double max_dev = -1.0;
    for (int i = a + 1; i < b; ++i) {
        const double dev = deviation(i, a, b);
        if (dev > max_dev) {
            max_dev = dev;
            arg = i;
        }
    }
    if (max_dev < threshold) return;  // drop everything strictly inside
    keep[arg] = 1;
    dpMark(a, arg, threshold, keep, deviation);
    dpMark(arg, b, threshold, keep, deviation);
}

}  // namespace

Path douglasPeucker(const Path& path, const Scene& scene, const OptimizerParams& params) {
    params.validate();
    const int m = path.size();
    if (m <= 2) return path;

    std::vector<char> keep(m, 0);
    keep.front() = keep.back() = 1;

    if (params.dp_metric == DeviationMetric::JointSpace) {
        dpMark(0, m - 1, params.dp_threshold, keep, [&](int i, int a, int b) {
            return pointToChord(path[i], path[a], path[b]);
        });
    } else {
        const auto tcp = tcpPositions(scene.robot, path);
        const int chains = scene.robot.chainCount();
        dpMark(0, m - 1, params.dp_threshold, keep, [&](int i, int a, int b) {
            double dev = 0.0;
            for (int c = 0; c < chains; ++c)
                dev = std::max(dev, pointToChord(tcp[i][c], tcp[a][c], tcp[b][c]));
            return dev;
        });
    }

    // feasibility guard: simplified edges must still be collision-free
    int prev = 0;
    for (int i = 1; i < m; ++i) {
        if (!keep[i]) continue;
        if (i - prev > 1 &&
            !segmentIsFree(scene, path[prev], path[i], params.check_resolution)) {
            for (int k = prev + 1; k < i; ++k) keep[k] = 1;
        }
        prev = i;
    }

    std::vector<JointConfig> kept;
    for (int i = 0; i < m; ++i)
        if (keep[i]) kept.push_back(path[i]);
    return Path::fromWaypoints(std::move(kept));
}

JointRotationMetrics jointRotationMetrics(const RobotModel& model, const Path& path) {
    const int m = path.size();
    const int n = model.dimension();
    JointRotationMetrics out;
    out.alpha = Eigen::MatrixXd::Zero(m, n);
    out.g = Eigen::MatrixXd::Zero(m, n);
    if (m < 2) return out;

    const auto tcp = tcpPositions(model, path);
    for (int i = 1; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            const int c = model.chainOfJoint(j);
            const double disp = (tcp[i][c] - tcp[i - 1][c]).norm();
            const double dq = std::abs(path[i][j] - path[i - 1][j]);
            if (disp < 1e-12) {
                out.alpha(i, j) = dq < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
                if (std::isinf(out.alpha(i, j))) out.has_infinite = true;
            } else {
                out.alpha(i, j) = dq / disp;
            }
        }
    }
    for (int i = 1; i + 1 < m; ++i) {
        for (int j = 0; j < n; ++j) {
            const double d_prev = path[i][j] - path[i - 1][j];
            const double d_next = path[i + 1][j] - path[i][j];
            out.g(i, j) = d_prev * d_next < 0.0 ? out.alpha(i, j) + out.alpha(i + 1, j) : 0.0;
        }
    }
    return out;
}

RefineResult jointRotationRefine(const Scene& scene, const Path& path,
                                 const OptimizerParams& params) {
    params.validate();
    RefineResult out;
    out.path = path;
    const int m = path.size();
    const int n = scene.robot.dimension();
    if (m < 3) return out;

    Path& p = out.path;
    auto tcp = tcpPositions(scene.robot, p);
    for (int i = 1; i + 1 < m; ++i) {
        for (int j = 0; j < n; ++j) {
            const int c = scene.robot.chainOfJoint(j);
            const double d_prev = p[i][j] - p[i - 1][j];
            const double d_next = p[i + 1][j] - p[i][j];
            if (!(d_prev * d_next < 0.0)) continue;
            const double disp_prev = (tcp[i][c] - tcp[i - 1][c]).norm();
            const double disp_next = (tcp[i + 1][c] - tcp[i][c]).norm();
            const double a_prev = disp_prev < 1e-12
                                      ? std::numeric_limits<double>::infinity()
                                      : std::abs(d_prev) / disp_prev;
            const double a_next = disp_next < 1e-12
                                      ? std::numeric_limits<double>::infinity()
                                      : std::abs(d_next) / disp_next;
            if (!(a_prev + a_next >= params.alpha_max)) continue;

            const double arc = disp_prev + disp_next;
            if (arc < 1e-12) {
                out.unresolved.emplace_back(i, j);
                continue;
            }
            const double fraction = disp_prev / arc;
            JointConfig candidate = p[i];
            candidate[j] = p[i - 1][j] + fraction * (p[i + 1][j] - p[i - 1][j]);
            if (segmentIsFree(scene, p[i - 1], candidate, params.check_resolution) &&
                segmentIsFree(scene, candidate, p[i + 1], params.check_resolution)) {
                p.waypoints[i] = candidate;
                tcp[i] = forwardKinematics(scene.robot, candidate).tcp;
                ++out.refined_joints;
            } else {
                out.unresolved.emplace_back(i, j);
            }
        }
    }

    // final re-measure catches knock-on violations from neighbouring edits
    const JointRotationMetrics metrics = jointRotationMetrics(scene.robot, p);
    for (int i = 1; i + 1 < m; ++i)
        for (int j = 0; j < n; ++j)
            if (metrics.g(i, j) >= params.alpha_max) {
                const auto entry = std::make_pair(i, j);
                if (std::find(out.unresolved.begin(), out.unresolved.end(), entry) ==
                    out.unresolved.end())
                    out.unresolved.push_back(entry);
            }
    return out;
}

Eigen::VectorXd BSpline::evaluate(double u) const {
    const int m = static_cast<int>(control_points.size());
    const int p = degree;
    u = std::clamp(u, 0.0, 1.0);
    int span = p;
    while (span < m - 1 && u >= knots[span + 1]) ++span;

    std::vector<Eigen::VectorXd> d(p + 1);
    for (int r = 0; r <= p; ++r) d[r] = control_points[span - p + r];
    for (int r = 1; r <= p; ++r) {
        for (int j = p; j >= r; --j) {
            const int idx = span - p + j;
            const double denom = knots[idx + p - r + 1] - knots[idx];
            const double alpha = denom > 0.0 ? (u - knots[idx]) / denom : 0.0;
            d[j] = (1.0 - alpha) * d[j - 1] + alpha * d[j];
        }
    }
    return d[p];
}

Trajectory fitBspline(const Path& path, const OptimizerParams& params) {
    params.validate();
    const int m = path.size();
    if (m < 2) throw std::invalid_argument("fitBspline: need at least 2 waypoints");

    Trajectory traj;
    traj.source = path;
    BSpline& s = traj.spline;
    s.degree = std::min(3, m - 1);
    s.control_points = path.waypoints;

    const int spans = m - s.degree;
    s.knots.assign(s.degree + 1, 0.0);
    for (int i = 1; i < spans; ++i)
        s.knots.push_back(static_cast<double>(i) / spans);
    s.knots.insert(s.knots.end(), s.degree + 1, 1.0);

    const int total = spans * params.spline_samples;
    traj.samples.reserve(total + 1);
    for (int t = 0; t <= total; ++t)
        traj.samples.push_back(s.evaluate(static_cast<double>(t) / total));
    return traj;
}

namespace {

// Null-motion steps (no TCP displacement on any chain) break the rotation
// rate; merge them away where the resulting edge stays valid.
Path mergeNullMotion(const Scene& scene, const Path& path, double check_resolution) {
    if (path.size() < 3) return path;
    std::vector<JointConfig> kept;
    kept.push_back(path.front());
    auto tcp_prev = forwardKinematics(scene.robot, path.front()).tcp;
    for (int i = 1; i < path.size(); ++i) {
        auto tcp_i = forwardKinematics(scene.robot, path[i]).tcp;
        double disp = 0.0;
        for (std::size_t c = 0; c < tcp_i.size(); ++c)
            disp = std::max(disp, (tcp_i[c] - tcp_prev[c]).norm());
        const bool last = i == path.size() - 1;
        if (disp < 1e-9 && !last) {
            // candidate merge: drop waypoint i if the bridge edge is valid
            if (segmentIsFree(scene, kept.back(), path[i + 1], check_resolution)) continue;
        }
        if (disp < 1e-9 && last && kept.size() >= 2) {
            // keep the goal; retire the preceding null-motion twin instead
            const JointConfig prev = kept[kept.size() - 2];
            if (segmentIsFree(scene, prev, path[i], check_resolution)) kept.pop_back();
        }
        kept.push_back(path[i]);
        tcp_prev = std::move(tcp_i);
    }
    return Path::fromWaypoints(std::move(kept));
}

}  // namespace

OptimizeResult optimize(const Scene& scene, const Path& path, const OptimizerParams& params,
                        Rng& rng) {
    params.validate();
    if (path.size() < 1) throw std::invalid_argument("optimize: empty path");

    OptimizeResult out;
    out.metrics.raw_nodes = path.size();
    out.metrics.raw_len_rad = path.lengthL1();

    const Path shortcut =
        shortcutOptimize(scene, path, params.shortcut_iterations, rng, params);
    out.metrics.shortcut_nodes = shortcut.size();
    out.metrics.shortcut_len_rad = shortcut.lengthL1();

    const Path simplified = douglasPeucker(shortcut, scene, params);
    out.metrics.dp_nodes = simplified.size();
    out.metrics.dp_len_rad = simplified.lengthL1();

    const Path merged = mergeNullMotion(scene, simplified, params.check_resolution);
    RefineResult refined = jointRotationRefine(scene, merged, params);
    out.metrics.refined_joints = refined.refined_joints;
    out.metrics.unresolved_joints = static_cast<int>(refined.unresolved.size());

    out.trajectory = fitBspline(refined.path, params);
    if (params.strict_curve_check) {
        out.curve_checked = true;
        for (const JointConfig& q : out.trajectory.samples)
            if (!configIsFree(scene, q)) {
                out.curve_collision_free = false;
                break;
            }
    }
    return out;
}

}  // namespace pgmp
