#ifndef QCBO_PIPELINE_HPP
#define QCBO_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcbo/gpr.hpp"
#include "qcbo/partition.hpp"
#include "qcbo/problem.hpp"
#include "qcbo/qaoa.hpp"

namespace qcbo {

enum class SolveMode { Hybrid, StandaloneGpr };

std::string to_string(SolveMode mode);
SolveMode solve_mode_from_string(const std::string& name);

struct RunConfig {
    int max_group_size = 7;      // nu
    int cycles = 2;              // T
    int qaoa_evaluations = 200;  // optimizer budget per restart
    int restarts = 4;
    int max_candidates = 10;     // lambda
    long gpr_max_steps = -1;     // -1 -> N * M
    std::optional<double> epsilon;       // overrides the instance value
    std::optional<double> provision_cap; // overrides the instance value
    SolveMode mode = SolveMode::Hybrid;
    std::uint64_t seed = 0;
    StepOrder order = StepOrder::MixerThenCost;
    int threads = 0; // 0 -> hardware concurrency; never affects results
};

struct StageTimings {
    double divide_s = 0.0;
    double qaoa_s = 0.0;
    double reconstruct_s = 0.0;
    double gpr_s = 0.0;
    double total_s = 0.0;
};

struct RunManifest {
    // Resolved configuration (after instance/flag overrides).
    int max_group_size = 0;
    int cycles = 0;
    int qaoa_evaluations = 0;
    int restarts = 0;
    int max_candidates = 0;
    long gpr_max_steps = 0;
    double epsilon = 0.0;
    std::optional<double> provision_cap;
    SolveMode mode = SolveMode::Hybrid;
    std::uint64_t seed = 0;
    StepOrder order = StepOrder::MixerThenCost;

    std::vector<int> assignment; // final action per loanee, 1-based
    double objective = 0.0;
    double provision_total = 0.0;
    double bank_profit = 0.0;
    int dpo_count = 0;
    int group_count = 0;       // hybrid only
    std::vector<Group> groups; // hybrid only

    bool forced_merge = false;
    bool cap_infeasible = false; // cap given but not reached
    GprTrace trace;

    StageTimings timings;
    std::string version;
};

/// Runs the full pipeline on one instance. Hybrid mode: divide ->
/// per-group QAOA -> reconstruct -> GPR. Standalone mode: GPR from a
/// seeded uniformly random assignment. All randomness flows from
/// config.seed through named substreams.
RunManifest solve(const ProblemInstance& instance, const RunConfig& config);

/// Deterministic JSON rendering. Timings are the only non-reproducible
/// content and can be omitted for byte-wise comparisons.
std::string manifest_json(const RunManifest& manifest, bool include_timings = true);

/// Writes manifest.json and gpr_trace.csv into the directory; with
/// with_partition_report also partition.json (group core/edge-node ids,
/// hybrid runs only).
void write_run_outputs(const RunManifest& manifest, const std::string& out_dir,
                       bool with_partition_report = false);

struct SweepRow {
    double epsilon = 0.0;
    SolveMode mode = SolveMode::Hybrid;
    double objective = 0.0;
    double provision_total = 0.0;
    int dpo_count = 0;
    double bank_profit = 0.0;
};

/// Solves both modes for every epsilon in the grid (ascending), with
/// identical instance, seed and GPR parameters per epsilon.
std::vector<SweepRow> sweep(const ProblemInstance& instance, const RunConfig& config,
                            std::span<const double> epsilon_grid);

/// CSV: epsilon,mode,objective,provision,dpo_count,bank_profit.
void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);

} // namespace qcbo

#endif // QCBO_PIPELINE_HPP
