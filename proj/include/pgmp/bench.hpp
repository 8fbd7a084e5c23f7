#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pgmp/scenario.hpp"

namespace pgmp {

// One planner run plus its optimization, in the fixed CSV schema.
struct TrialRecord {
    std::string scenario;
    std::string query;
    std::string sampler;
    std::uint64_t seed{0};
    bool success{false};
    int extended_nodes{0};
    double plan_time_s{0.0};
    double fit_time_s{0.0};
    StageMetrics stages;
};

struct BenchOptions {
    int trials{10};
    std::uint64_t base_seed{0};
    std::vector<SamplerKind> samplers{SamplerKind::PriorGuided, SamplerKind::Uniform,
                                      SamplerKind::GoalBias};
};

// Runs every sampler x query x trial combination with seed = base_seed +
// trial index; successful plans are optimized. Individual failures are
// recorded, never fatal. Records come back sorted by (sampler, query, seed).
std::vector<TrialRecord> runBenchmark(const Scenario& scenario, const BenchOptions& options);

// CSV schema:
// scenario,query,sampler,seed,success,extended_nodes,plan_time_s,fit_time_s,
// raw_nodes,raw_len_rad,shortcut_nodes,shortcut_len_rad,dp_nodes,refined_joints
//
// With wall_time false (the default) the two time columns are written as
// zero so repeated runs with the same seed produce byte-identical files;
// measured times remain available in the records and the summary.
void writeCsv(std::ostream& out, const std::vector<TrialRecord>& records, bool wall_time);

struct SummaryRow {
    std::string query;
    std::string sampler;
    int trials{0};
    int successes{0};
    double mean_extended_nodes{0.0};   // over successes; displayed rounded up
    double median_extended_nodes{0.0};
    double mean_plan_time_s{0.0};
    double mean_fit_time_s{0.0};
    double mean_shortcut_reduction{0.0};  // relative L1 length drop
    double mean_dp_reduction{0.0};        // relative node drop
};

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);
void printSummary(std::ostream& out, const std::vector<SummaryRow>& rows);

// Joint-space connectivity check for low-dimensional scenes: discretizes
// the limit box at `cells_per_joint` cells per joint, flood-fills the free
// cells and reports which probe configurations share a component.
struct FloodFillReport {
    int components{0};
    std::int64_t free_cells{0};
    std::int64_t total_cells{0};
    std::vector<int> probe_components;  // -1 when the probe cell is blocked
    bool probesConnected() const {
        if (probe_components.empty()) return false;
        for (int c : probe_components)
            if (c < 0 || c != probe_components.front()) return false;
        return true;
    }
};

FloodFillReport floodFillOracle(const Scene& scene, int cells_per_joint,
                                const std::vector<JointConfig>& probes);

}  // namespace pgmp
