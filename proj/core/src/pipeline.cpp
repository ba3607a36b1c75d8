#include "qcbo/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qcbo/partition.hpp"
#include "qcbo/reconstruct.hpp"
#include "qcbo/rng.hpp"
#include "qcbo/version.hpp"

namespace qcbo {

using nlohmann::json;

std::string to_string(SolveMode mode) {
    return mode == SolveMode::Hybrid ? "hybrid" : "standalone-gpr";
}

SolveMode solve_mode_from_string(const std::string& name) {
    if (name == "hybrid") return SolveMode::Hybrid;
    if (name == "standalone-gpr") return SolveMode::StandaloneGpr;
    throw std::invalid_argument("unknown mode: " + name + " (expected hybrid|standalone-gpr)");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Runs per-group optimizations on a small worker pool. Each group's
/// RNG substream is derived from (seed, group index), so the result is
/// independent of scheduling.
std::vector<GroupSolution> optimize_groups(const ProblemInstance& instance,
                                           const std::vector<Group>& groups,
                                           const QaoaConfig& qaoa_config, std::uint64_t seed,
                                           int threads) {
    std::vector<GroupSolution> solutions(groups.size());
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t n_workers = threads > 0 ? static_cast<std::size_t>(threads)
                                        : std::max<std::size_t>(1, hw);
    n_workers = std::min(n_workers, groups.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t g = next.fetch_add(1);
            if (g >= groups.size()) break;
            solutions[g] = optimize_group(instance, groups[g], instance.epsilon, qaoa_config,
                                          substream_seed(seed, "qaoa.group", g));
        }
    };
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return solutions;
}

ActionAssignment random_assignment(const ProblemInstance& instance, std::uint64_t seed) {
    Rng rng = substream(seed, "baseline");
    std::vector<int> actions(static_cast<std::size_t>(instance.n_loanees));
    for (auto& a : actions) a = rng.uniform_int(1, instance.n_actions);
    return ActionAssignment(std::move(actions), instance.n_actions);
}

} // namespace

RunManifest solve(const ProblemInstance& raw_instance, const RunConfig& config) {
    const auto t_total = Clock::now();
    ProblemInstance instance =
        config.epsilon ? raw_instance.with_epsilon(*config.epsilon) : raw_instance;
    instance.validate();
    const std::optional<double> cap =
        config.provision_cap ? config.provision_cap : instance.provision_cap;

    RunManifest manifest;
    manifest.max_group_size = config.max_group_size;
    manifest.cycles = config.cycles;
    manifest.qaoa_evaluations = config.qaoa_evaluations;
    manifest.restarts = config.restarts;
    manifest.max_candidates = config.max_candidates;
    manifest.gpr_max_steps = config.gpr_max_steps >= 0
                                 ? config.gpr_max_steps
                                 : static_cast<long>(instance.n_loanees) * instance.n_actions;
    manifest.epsilon = instance.epsilon;
    manifest.provision_cap = cap;
    manifest.mode = config.mode;
    manifest.seed = config.seed;
    manifest.order = config.order;
    manifest.version = kVersion;

    std::optional<ActionAssignment> start;
    if (config.mode == SolveMode::Hybrid) {
        auto t0 = Clock::now();
        std::vector<Group> groups =
            divide(instance, config.max_group_size, substream_seed(config.seed, "partition"));
        manifest.timings.divide_s = seconds_since(t0);
        manifest.group_count = static_cast<int>(groups.size());

        QaoaConfig qaoa_config;
        qaoa_config.cycles = config.cycles;
        qaoa_config.max_evaluations = config.qaoa_evaluations;
        qaoa_config.restarts = config.restarts;
        qaoa_config.order = config.order;

        t0 = Clock::now();
        std::vector<GroupSolution> solutions =
            optimize_groups(instance, groups, qaoa_config, config.seed, config.threads);
        manifest.timings.qaoa_s = seconds_since(t0);

        std::vector<std::vector<double>> distributions;
        distributions.reserve(solutions.size());
        for (auto& s : solutions) distributions.push_back(std::move(s.probabilities));

        t0 = Clock::now();
        ReconstructResult recon =
            reconstruct(groups, distributions, instance, config.max_candidates,
                        substream_seed(config.seed, "reconstruct"));
        manifest.timings.reconstruct_s = seconds_since(t0);
        manifest.forced_merge = recon.forced_merge;
        manifest.groups = std::move(groups);
        start = std::move(recon.assignment);
    } else {
        start = random_assignment(instance, config.seed);
    }

    auto t0 = Clock::now();
    GprResult gpr = run_gpr(instance, *start, cap, manifest.gpr_max_steps);
    manifest.timings.gpr_s = seconds_since(t0);

    manifest.assignment = gpr.assignment.actions();
    manifest.objective = objective(instance, gpr.assignment);
    manifest.provision_total = provision(instance, gpr.assignment);
    manifest.bank_profit = bank_profit(instance, gpr.assignment);
    manifest.dpo_count = dpo_count(gpr.assignment);
    manifest.trace = std::move(gpr.trace);
    manifest.cap_infeasible = cap.has_value() && manifest.provision_total > *cap;
    manifest.timings.total_s = seconds_since(t_total);
    return manifest;
}

std::string manifest_json(const RunManifest& m, bool include_timings) {
    json doc;
    doc["version"] = m.version;
    doc["config"] = {
        {"nu", m.max_group_size},
        {"cycles", m.cycles},
        {"opt_iters", m.qaoa_evaluations},
        {"restarts", m.restarts},
        {"lambda", m.max_candidates},
        {"gpr_iters", m.gpr_max_steps},
        {"epsilon", m.epsilon},
        {"provision_cap", m.provision_cap ? json(*m.provision_cap) : json(nullptr)},
        {"mode", to_string(m.mode)},
        {"seed", m.seed},
        {"step_order", m.order == StepOrder::MixerThenCost ? "mixer-then-cost" : "cost-then-mixer"},
    };
    doc["assignment"] = m.assignment;
    doc["objective"] = m.objective;
    doc["provision"] = m.provision_total;
    doc["bank_profit"] = m.bank_profit;
    doc["dpo_count"] = m.dpo_count;
    doc["group_count"] = m.group_count;
    doc["flags"] = {
        {"forced_merge", m.forced_merge},
        {"cap_infeasible", m.cap_infeasible},
    };
    const char* reason = m.trace.termination == GprTermination::CapReached ? "cap-reached"
                         : m.trace.termination == GprTermination::AllBlocked ? "all-blocked"
                                                                             : "iteration-cap";
    doc["gpr"] = {
        {"steps", m.trace.steps.size()},
        {"termination", reason},
        {"initial_objective", m.trace.initial_objective},
        {"initial_provision", m.trace.initial_provision},
        {"trace_csv", "gpr_trace.csv"},
    };
    if (include_timings) {
        doc["timings"] = {
            {"divide_s", m.timings.divide_s},
            {"qaoa_s", m.timings.qaoa_s},
            {"reconstruct_s", m.timings.reconstruct_s},
            {"gpr_s", m.timings.gpr_s},
            {"total_s", m.timings.total_s},
        };
    }
    return doc.dump(2);
}

void write_run_outputs(const RunManifest& manifest, const std::string& out_dir,
                       bool with_partition_report) {
    std::filesystem::create_directories(out_dir);
    const auto dir = std::filesystem::path(out_dir);
    {
        std::ofstream out(dir / "manifest.json");
        if (!out) throw std::runtime_error("cannot write manifest in " + out_dir);
        out << manifest_json(manifest) << '\n';
    }
    {
        std::ofstream out(dir / "gpr_trace.csv");
        if (!out) throw std::runtime_error("cannot write trace in " + out_dir);
        write_trace_csv(manifest.trace, out);
    }
    if (with_partition_report) {
        json report = json::array();
        for (const Group& g : manifest.groups) {
            report.push_back({{"core", g.core}, {"edge_nodes", g.edge_nodes}});
        }
        std::ofstream out(dir / "partition.json");
        if (!out) throw std::runtime_error("cannot write partition report in " + out_dir);
        out << report.dump(2) << '\n';
    }
}

std::vector<SweepRow> sweep(const ProblemInstance& instance, const RunConfig& config,
                            std::span<const double> epsilon_grid) {
    if (epsilon_grid.empty()) throw std::invalid_argument("sweep: empty epsilon grid");
    std::vector<double> grid(epsilon_grid.begin(), epsilon_grid.end());
    std::sort(grid.begin(), grid.end());

    std::vector<SweepRow> rows;
    rows.reserve(grid.size() * 2);
    for (double eps : grid) {
        for (SolveMode mode : {SolveMode::Hybrid, SolveMode::StandaloneGpr}) {
            RunConfig run = config;
            run.epsilon = eps;
            run.mode = mode;
            RunManifest m = solve(instance, run);
            rows.push_back({eps, mode, m.objective, m.provision_total, m.dpo_count,
                            m.bank_profit});
        }
    }
    return rows;
}

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    out << "epsilon,mode,objective,provision,dpo_count,bank_profit\n";
    for (const SweepRow& r : rows) {
        out << r.epsilon << ',' << to_string(r.mode) << ',' << r.objective << ','
            << r.provision_total << ',' << r.dpo_count << ',' << r.bank_profit << '\n';
    }
}

} // namespace qcbo
