#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pgmp/bench.hpp"
#include "pgmp/io.hpp"

namespace {

using namespace pgmp;

const Query& findQuery(const Scenario& scenario, const std::string& query) {
    if (query.empty()) return scenario.queries.front();
    for (const Query& q : scenario.queries)
        if (q.label == query) return q;
    // numeric index fallback
    try {
        const int idx = std::stoi(query);
        return scenario.queries.at(idx);
    } catch (...) {
        throw std::runtime_error("scenario has no query '" + query + "'");
    }
}

int runPlan(const std::string& scenario_file, const std::string& query_label,
            const std::string& sampler, std::uint64_t seed, const std::string& out_file) {
    const Scenario scenario = loadScenario(scenario_file);
    const Query& query = findQuery(scenario, query_label);
    PlannerParams params = scenario.planner;
    params.sampler = samplerFromName(sampler);
    Rng rng(seed);
    const PlanResult result = plan(scenario.scene, query.init, query.goal, params, rng);
    std::cout << "query: " << query.label << "\n"
              << "sampler: " << sampler << "\n"
              << "success: " << (result.success ? "yes" : "no") << "\n"
              << "extended_nodes: " << result.extended_nodes << "\n"
              << "iterations: " << result.iterations << "\n"
              << "plan_time_s: " << result.plan_time_s << "\n"
              << "fit_time_s: " << result.fit_time_s << "\n";
    if (result.success) {
        std::cout << "waypoints: " << result.path.size() << "\n"
                  << "length_l1_rad: " << result.path.lengthL1() << "\n";
        if (!out_file.empty()) {
            savePath(result.path, out_file);
            std::cout << "path written to " << out_file << "\n";
        }
    }
    return result.success ? 0 : 1;
}

int runOptimize(const std::string& scenario_file, const std::string& path_file,
                std::uint64_t seed, const std::string& out_file) {
    const Scenario scenario = loadScenario(scenario_file);
    const Path path = loadPath(path_file);
    Rng rng(seed);
    const OptimizeResult result = optimize(scenario.scene, path, scenario.optimizer, rng);
    const StageMetrics& m = result.metrics;
    std::cout << "raw: " << m.raw_nodes << " nodes, " << m.raw_len_rad << " rad\n"
              << "shortcut: " << m.shortcut_nodes << " nodes, " << m.shortcut_len_rad
              << " rad\n"
              << "simplified: " << m.dp_nodes << " nodes, " << m.dp_len_rad << " rad\n"
              << "refined_joints: " << m.refined_joints << "\n"
              << "unresolved_joints: " << m.unresolved_joints << "\n";
    if (result.curve_checked)
        std::cout << "curve_collision_free: " << (result.curve_collision_free ? "yes" : "no")
                  << "\n";
    if (!out_file.empty()) {
        saveTrajectory(result.trajectory, out_file);
        std::cout << "trajectory written to " << out_file << "\n";
    }
    return 0;
}

int runCollectExemplars(const std::string& scenario_file, const std::string& query_label,
                        const std::string& target, int count, std::uint64_t seed,
                        const std::string& out_file) {
    const Scenario scenario = loadScenario(scenario_file);
    const Query& query = findQuery(scenario, query_label);
    ExemplarParams params = scenario.planner.exemplars;
    if (count > 0) params.dataset_size = count;
    Rng rng(seed);
    const JointConfig& center = target == "goal" ? query.goal : query.init;
    const ExemplarResult result = collectExemplars(scenario.scene, center, params, rng);
    std::cout << "accepted: " << result.dataset.size() << "\n"
              << "attempts: " << result.attempts << "\n"
              << "acceptance_rate: " << result.acceptance_rate << "\n";
    if (!out_file.empty()) {
        saveDataset(result.dataset, out_file);
        std::cout << "dataset written to " << out_file << "\n";
    }
    return 0;
}

int runFitGmm(const std::string& data_file, int components, std::uint64_t seed,
              const std::string& out_file) {
    const Dataset data = loadDataset(data_file);
    Rng rng(seed);
    const EmResult result = emFit(data, components, EmOptions{}, rng);
    std::cout << "points: " << data.size() << "\n"
              << "components: " << components << "\n"
              << "iterations: " << result.iterations << "\n"
              << "converged: " << (result.converged ? "yes" : "no") << "\n"
              << "log_likelihood: " << result.log_likelihood.back() << "\n";
    if (!out_file.empty()) {
        saveFgmm(result.model, out_file);
        std::cout << "model written to " << out_file << "\n";
    }
    return 0;
}

int runBench(const std::string& scenario_file, int trials, std::uint64_t seed,
             std::vector<std::string> samplers, const std::string& out_file, bool wall_time) {
    const Scenario scenario = loadScenario(scenario_file);
    BenchOptions options;
    options.trials = trials;
    options.base_seed = seed;
    if (!samplers.empty()) {
        options.samplers.clear();
        for (const std::string& s : samplers) options.samplers.push_back(samplerFromName(s));
    }
    const std::vector<TrialRecord> records = runBenchmark(scenario, options);
    if (!out_file.empty()) {
        std::ofstream out(out_file);
        if (!out) throw std::runtime_error("cannot write '" + out_file + "'");
        writeCsv(out, records, wall_time);
        std::cout << "results written to " << out_file << "\n";
    } else {
        writeCsv(std::cout, records, wall_time);
    }
    printSummary(std::cout, summarize(records));
    return 0;
}

int runValidate(const std::string& scenario_file, int cells) {
    const Scenario scenario = loadScenario(scenario_file);
    const Scene& scene = scenario.scene;
    std::cout << "scenario: " << scenario.name << "\n"
              << "dimension: " << scene.robot.dimension() << "\n"
              << "chains: " << scene.robot.chainCount() << "\n"
              << "occupied_voxels: " << scene.grid.size() << "\n"
              << "static_boxes: " << scene.static_boxes.size() << "\n"
              << "self_collision_pairs: " << scene.self_collision_pairs.size() << "\n"
              << "d_safe: " << scene.d_safe << "\n"
              << "queries: " << scenario.queries.size() << " (endpoints validated)\n";
    if (scene.robot.dimension() > 3) {
        std::cout << "flood_fill: skipped (dimension > 3)\n";
        return 0;
    }
    std::vector<JointConfig> probes;
    for (const Query& q : scenario.queries) {
        probes.push_back(q.init);
        probes.push_back(q.goal);
    }
    const FloodFillReport report = floodFillOracle(scene, cells, probes);
    std::cout << "flood_fill cells: " << cells << " per joint\n"
              << "free_cells: " << report.free_cells << "/" << report.total_cells << "\n"
              << "components: " << report.components << "\n";
    bool all_connected = true;
    for (std::size_t i = 0; i < scenario.queries.size(); ++i) {
        const int a = report.probe_components[2 * i];
        const int b = report.probe_components[2 * i + 1];
        const bool ok = a >= 0 && a == b;
        all_connected = all_connected && ok;
        std::cout << "query '" << scenario.queries[i].label << "': init component " << a
                  << ", goal component " << b << (ok ? " (connected)" : " (NOT connected)")
                  << "\n";
    }
    return all_connected ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sampling-based motion planning toolkit"};
    app.require_subcommand(1);

    std::string scenario_file, query_label, out_file, path_file, data_file;
    std::string sampler = "prior", target = "init";
    std::uint64_t seed = 0;
    int trials = 10, components = 2, count = 0, cells = 200;
    bool wall_time = false;
    std::vector<std::string> samplers;

    CLI::App* plan_cmd = app.add_subcommand("plan", "Plan one query");
    plan_cmd->add_option("--scenario", scenario_file, "scenario file")->required();
    plan_cmd->add_option("--query", query_label, "query label or index");
    plan_cmd->add_option("--sampler", sampler, "prior|uniform|goal-bias");
    plan_cmd->add_option("--seed", seed, "RNG seed");
    plan_cmd->add_option("--out", out_file, "output path file");

    CLI::App* opt_cmd = app.add_subcommand("optimize", "Optimize a stored path");
    opt_cmd->add_option("--scenario", scenario_file, "scenario file")->required();
    opt_cmd->add_option("--path", path_file, "input path file")->required();
    opt_cmd->add_option("--seed", seed, "RNG seed");
    opt_cmd->add_option("--out", out_file, "output trajectory file");

    CLI::App* col_cmd = app.add_subcommand("collect-exemplars",
                                           "Collect collision-free configurations");
    col_cmd->add_option("--scenario", scenario_file, "scenario file")->required();
    col_cmd->add_option("--query", query_label, "query label or index");
    col_cmd->add_option("--target", target, "init|goal");
    col_cmd->add_option("--count", count, "dataset size override");
    col_cmd->add_option("--seed", seed, "RNG seed");
    col_cmd->add_option("--out", out_file, "output dataset file");

    CLI::App* fit_cmd = app.add_subcommand("fit-gmm", "Fit a mixture to a dataset");
    fit_cmd->add_option("--data", data_file, "dataset file")->required();
    fit_cmd->add_option("--components", components, "mixture components");
    fit_cmd->add_option("--seed", seed, "RNG seed");
    fit_cmd->add_option("--out", out_file, "output model file");

    CLI::App* bench_cmd = app.add_subcommand("bench", "Run the benchmark harness");
    bench_cmd->add_option("--scenario", scenario_file, "scenario file")->required();
    bench_cmd->add_option("--trials", trials, "trials per sampler and query");
    bench_cmd->add_option("--seed", seed, "base RNG seed");
    bench_cmd->add_option("--sampler", samplers, "restrict samplers (repeatable)");
    bench_cmd->add_option("--out", out_file, "output CSV file");
    bench_cmd->add_flag("--wall-time", wall_time,
                        "write measured times into the CSV (breaks byte reproducibility)");

    CLI::App* val_cmd = app.add_subcommand("validate", "Lint a scenario file");
    val_cmd->add_option("--scenario", scenario_file, "scenario file")->required();
    val_cmd->add_option("--cells", cells, "flood-fill cells per joint");

    CLI11_PARSE(app, argc, argv);

    try {
        if (plan_cmd->parsed())
            return runPlan(scenario_file, query_label, sampler, seed, out_file);
        if (opt_cmd->parsed()) return runOptimize(scenario_file, path_file, seed, out_file);
        if (col_cmd->parsed())
            return runCollectExemplars(scenario_file, query_label, target, count, seed,
                                       out_file);
        if (fit_cmd->parsed()) return runFitGmm(data_file, components, seed, out_file);
        if (bench_cmd->parsed())
            return runBench(scenario_file, trials, seed, samplers, out_file, wall_time);
        if (val_cmd->parsed()) return runValidate(scenario_file, cells);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
