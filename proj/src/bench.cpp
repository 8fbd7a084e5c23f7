#include "pgmp/bench.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <stdexcept>

namespace pgmp {

namespace {

void appendNumber(std::string& line, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    line += buf;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

std::vector<TrialRecord> runBenchmark(const Scenario& scenario, const BenchOptions& options) {
    if (options.trials < 1) throw std::invalid_argument("runBenchmark: trials must be >= 1");
    std::vector<TrialRecord> records;
    records.reserve(options.samplers.size() * scenario.queries.size() * options.trials);

    for (const SamplerKind sampler : options.samplers) {
        PlannerParams planner = scenario.planner;
        planner.sampler = sampler;
        for (const Query& query : scenario.queries) {
            for (int trial = 0; trial < options.trials; ++trial) {
                const std::uint64_t seed = options.base_seed + static_cast<std::uint64_t>(trial);
                TrialRecord rec;
                rec.scenario = scenario.name;
                rec.query = query.label;
                rec.sampler = samplerName(sampler);
                rec.seed = seed;

                Rng plan_rng(seed);
                const PlanResult plan_result =
                    plan(scenario.scene, query.init, query.goal, planner, plan_rng);
                rec.success = plan_result.success;
                rec.extended_nodes = plan_result.extended_nodes;
                rec.plan_time_s = plan_result.plan_time_s;
                rec.fit_time_s = plan_result.fit_time_s;
                if (plan_result.success) {
                    Rng opt_rng(Rng::deriveSeed(seed, 1));
                    const OptimizeResult opt =
                        optimize(scenario.scene, plan_result.path, scenario.optimizer, opt_rng);
                    rec.stages = opt.metrics;
                }
                records.push_back(std::move(rec));
            }
        }
    }
    std::stable_sort(records.begin(), records.end(),
                     [](const TrialRecord& a, const TrialRecord& b) {
                         if (a.sampler != b.sampler) return a.sampler < b.sampler;
                         if (a.query != b.query) return a.query < b.query;
                         return a.seed < b.seed;
                     });
    return records;
}

void writeCsv(std::ostream& out, const std::vector<TrialRecord>& records, bool wall_time) {
    out << "scenario,query,sampler,seed,success,extended_nodes,plan_time_s,fit_time_s,"
           "raw_nodes,raw_len_rad,shortcut_nodes,shortcut_len_rad,dp_nodes,refined_joints\n";
    for (const TrialRecord& r : records) {
        std::string line;
        line += r.scenario + "," + r.query + "," + r.sampler + ",";
        line += std::to_string(r.seed) + ",";
        line += r.success ? "1," : "0,";
        line += std::to_string(r.extended_nodes) + ",";
        appendNumber(line, wall_time ? r.plan_time_s : 0.0);
        line += ",";
        appendNumber(line, wall_time ? r.fit_time_s : 0.0);
        line += ",";
        line += std::to_string(r.stages.raw_nodes) + ",";
        appendNumber(line, r.stages.raw_len_rad);
        line += ",";
        line += std::to_string(r.stages.shortcut_nodes) + ",";
        appendNumber(line, r.stages.shortcut_len_rad);
        line += ",";
        line += std::to_string(r.stages.dp_nodes) + ",";
        line += std::to_string(r.stages.refined_joints);
        out << line << "\n";
    }
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
    std::vector<SummaryRow> rows;
    for (const TrialRecord& r : records) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& s) {
            return s.query == r.query && s.sampler == r.sampler;
        });
        if (it == rows.end()) {
            rows.push_back({r.query, r.sampler});
            it = rows.end() - 1;
        }
        ++it->trials;
        if (r.success) ++it->successes;
    }
    for (SummaryRow& row : rows) {
        std::vector<double> nodes, plan_times, fit_times, shortcut_red, dp_red;
        for (const TrialRecord& r : records) {
            if (r.query != row.query || r.sampler != row.sampler || !r.success) continue;
            nodes.push_back(r.extended_nodes);
            plan_times.push_back(r.plan_time_s);
            fit_times.push_back(r.fit_time_s);
            if (r.stages.raw_len_rad > 0.0)
                shortcut_red.push_back(1.0 -
                                       r.stages.shortcut_len_rad / r.stages.raw_len_rad);
            if (r.stages.shortcut_nodes > 0)
                dp_red.push_back(1.0 - static_cast<double>(r.stages.dp_nodes) /
                                           r.stages.shortcut_nodes);
        }
        auto mean = [](const std::vector<double>& v) {
            if (v.empty()) return 0.0;
            double s = 0.0;
            for (double x : v) s += x;
            return s / static_cast<double>(v.size());
        };
        row.mean_extended_nodes = mean(nodes);
        row.median_extended_nodes = median(nodes);
        row.mean_plan_time_s = mean(plan_times);
        row.mean_fit_time_s = mean(fit_times);
        row.mean_shortcut_reduction = mean(shortcut_red);
        row.mean_dp_reduction = mean(dp_red);
    }
    return rows;
}

void printSummary(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "query sampler success mean_nodes median_nodes mean_plan_s mean_fit_s "
           "shortcut_len_drop dp_node_drop\n";
    for (const SummaryRow& r : rows) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s %s %d/%d %d %.1f %.4f %.4f %.1f%% %.1f%%",
                      r.query.c_str(), r.sampler.c_str(), r.successes, r.trials,
                      static_cast<int>(std::ceil(r.mean_extended_nodes)),
                      r.median_extended_nodes, r.mean_plan_time_s, r.mean_fit_time_s,
                      100.0 * r.mean_shortcut_reduction, 100.0 * r.mean_dp_reduction);
        out << buf << "\n";
    }
}

FloodFillReport floodFillOracle(const Scene& scene, int cells_per_joint,
                                const std::vector<JointConfig>& probes) {
    const int n = scene.robot.dimension();
    if (n > 3)
        throw std::invalid_argument(
            "floodFillOracle: grid oracle supports at most 3 joints (got " +
            std::to_string(n) + ")");
    if (cells_per_joint < 2)
        throw std::invalid_argument("floodFillOracle: need at least 2 cells per joint");

    const Eigen::VectorXd& lo = scene.robot.lowerLimits();
    const Eigen::VectorXd& hi = scene.robot.upperLimits();

    std::int64_t total = 1;
    for (int d = 0; d < n; ++d) total *= cells_per_joint;

    auto cellCenter = [&](std::int64_t idx) {
        JointConfig q(n);
        for (int d = 0; d < n; ++d) {
            const int c = static_cast<int>(idx % cells_per_joint);
            idx /= cells_per_joint;
            q[d] = lo[d] + (c + 0.5) * (hi[d] - lo[d]) / cells_per_joint;
        }
        return q;
    };
    auto cellOf = [&](const JointConfig& q) {
        std::int64_t idx = 0;
        for (int d = n - 1; d >= 0; --d) {
            int c = static_cast<int>(std::floor((q[d] - lo[d]) / (hi[d] - lo[d]) *
                                                cells_per_joint));
            c = std::clamp(c, 0, cells_per_joint - 1);
            idx = idx * cells_per_joint + c;
        }
        return idx;
    };

    std::vector<char> free_cell(total, 0);
    for (std::int64_t i = 0; i < total; ++i)
        free_cell[i] = configIsFree(scene, cellCenter(i)) ? 1 : 0;

    FloodFillReport report;
    report.total_cells = total;
    std::vector<int> component(total, -1);
    std::int64_t stride[3] = {1, cells_per_joint,
                              static_cast<std::int64_t>(cells_per_joint) * cells_per_joint};
    for (std::int64_t start = 0; start < total; ++start) {
        if (!free_cell[start] || component[start] >= 0) continue;
        const int id = report.components++;
        std::deque<std::int64_t> queue{start};
        component[start] = id;
        while (!queue.empty()) {
            const std::int64_t cur = queue.front();
            queue.pop_front();
            std::int64_t rest = cur;
            for (int d = 0; d < n; ++d) {
                const int c = static_cast<int>(rest % cells_per_joint);
                rest /= cells_per_joint;
                for (int step : {-1, 1}) {
                    const int nc = c + step;
                    if (nc < 0 || nc >= cells_per_joint) continue;
                    const std::int64_t nb = cur + step * stride[d];
                    if (free_cell[nb] && component[nb] < 0) {
                        component[nb] = id;
                        queue.push_back(nb);
                    }
                }
            }
        }
    }
    for (std::int64_t i = 0; i < total; ++i)
        if (free_cell[i]) ++report.free_cells;
    for (const JointConfig& probe : probes)
        report.probe_components.push_back(component[cellOf(probe)]);
    return report;
}

}  // namespace pgmp
