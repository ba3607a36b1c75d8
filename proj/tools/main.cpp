// Command-line driver for the loan-collection QCBO pipeline:
//   generate  write a synthetic instance file
//   solve     run the hybrid or standalone-GPR pipeline on an instance
//   sweep     solve both modes over an epsilon grid
//   oracle    exhaustive search on small instances
//
// Exit codes: 0 success, 1 usage error, 2 guard violation/infeasibility.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcbo/datagen.hpp"
#include "qcbo/oracle.hpp"
#include "qcbo/pipeline.hpp"
#include "qcbo/problem.hpp"
#include "qcbo/version.hpp"

namespace {

using nlohmann::json;

struct CommonOptions {
    std::string instance_path;
    qcbo::RunConfig run;
    std::string mode = "hybrid";
    std::string step_order = "mixer-then-cost";
    std::string out = ".";
    double epsilon = -1.0; // < 0: keep the instance value
    double provision_cap = -1.0;
    long gpr_iters = -1;
    int threads = 0;
};

void add_solver_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--instance", opt.instance_path, "Instance JSON file")->required();
    cmd->add_option("--nu", opt.run.max_group_size, "Maximum group size after division")
        ->check(CLI::Range(2, 64));
    cmd->add_option("--cycles", opt.run.cycles, "QAOA driving cycles T")->check(CLI::Range(1, 64));
    cmd->add_option("--opt-iters", opt.run.qaoa_evaluations,
                    "Objective-evaluation budget per optimizer restart");
    cmd->add_option("--restarts", opt.run.restarts, "Optimizer restarts per group");
    cmd->add_option("--lambda", opt.run.max_candidates, "Candidates kept per reconstruction merge");
    cmd->add_option("--gpr-iters", opt.gpr_iters, "Greedy provision reduction step budget");
    cmd->add_option("--epsilon", opt.epsilon, "Override the instance epsilon");
    cmd->add_option("--provision-cap", opt.provision_cap, "Override the instance provision cap");
    cmd->add_option("--seed", opt.run.seed, "Master seed for all stages");
    cmd->add_option("--step-order", opt.step_order, "Operator order within a driving cycle")
        ->check(CLI::IsMember({"mixer-then-cost", "cost-then-mixer"}));
    cmd->add_option("--threads", opt.threads, "Worker threads for per-group optimization");
    cmd->add_option("--out", opt.out, "Output directory");
}

qcbo::RunConfig resolve(const CommonOptions& opt) {
    qcbo::RunConfig run = opt.run;
    run.mode = qcbo::solve_mode_from_string(opt.mode);
    run.order = opt.step_order == "cost-then-mixer" ? qcbo::StepOrder::CostThenMixer
                                                    : qcbo::StepOrder::MixerThenCost;
    if (opt.epsilon >= 0.0) run.epsilon = opt.epsilon;
    if (opt.provision_cap >= 0.0) run.provision_cap = opt.provision_cap;
    run.gpr_max_steps = opt.gpr_iters;
    run.threads = opt.threads;
    return run;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Hybrid quantum-classical solver for loan-collection QCBO problems"};
    app.set_version_flag("--version", qcbo::kVersion);
    app.require_subcommand(1);

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic instance file");
    qcbo::GenConfig gen;
    double gen_epsilon = 0.5;
    double gen_cap = -1.0;
    std::string gen_out = "instance.json";
    gen_cmd->add_option("--n-loanees", gen.n_loanees, "Number of loanees")->check(CLI::Range(2, 1000000));
    gen_cmd->add_option("--n-actions", gen.n_actions, "Number of actions")->check(CLI::Range(2, 64));
    gen_cmd->add_option("--poisson-mean", gen.poisson_mean, "Mean of the profit-profile Poisson draw");
    gen_cmd->add_option("--mean-degree", gen.mean_degree, "Erdos-Renyi mean degree");
    gen_cmd->add_option("--weight-low", gen.assoc_weight_low, "Association weight range, open low end");
    gen_cmd->add_option("--weight-high", gen.assoc_weight_high, "Association weight range, closed high end");
    gen_cmd->add_option("--provision-low", gen.provision_low, "Provision log-uniform range, low end");
    gen_cmd->add_option("--provision-high", gen.provision_high, "Provision log-uniform range, high end");
    gen_cmd->add_option("--epsilon", gen_epsilon, "Epsilon stored in the instance");
    gen_cmd->add_option("--provision-cap", gen_cap, "Provision cap stored in the instance");
    gen_cmd->add_option("--seed", gen.seed, "Generator seed");
    gen_cmd->add_option("--out", gen_out, "Output file");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Run the pipeline on an instance");
    CommonOptions solve_opt;
    bool partition_report = false;
    add_solver_flags(solve_cmd, solve_opt);
    solve_cmd->add_option("--mode", solve_opt.mode, "hybrid or standalone-gpr")
        ->check(CLI::IsMember({"hybrid", "standalone-gpr"}));
    solve_cmd->add_flag("--partition-report", partition_report,
                        "Also write partition.json with group core/edge-node ids");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Solve both modes over an epsilon grid");
    CommonOptions sweep_opt;
    std::vector<double> grid;
    add_solver_flags(sweep_cmd, sweep_opt);
    sweep_cmd->add_option("--epsilon-grid", grid, "Epsilon values to sweep")->required();

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive search (small instances only)");
    std::string oracle_instance;
    double oracle_cap = -1.0;
    std::string oracle_out = "oracle.json";
    oracle_cmd->add_option("--instance", oracle_instance, "Instance JSON file")->required();
    oracle_cmd->add_option("--provision-cap", oracle_cap, "Optional provision cap");
    oracle_cmd->add_option("--out", oracle_out, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1; // usage errors map to exit code 1
    }

    if (gen_cmd->parsed()) {
        std::optional<double> cap;
        if (gen_cap >= 0.0) cap = gen_cap;
        qcbo::write_instance_file(gen, gen_epsilon, cap, gen_out);
        std::cout << "wrote " << gen_out << '\n';
        return 0;
    }

    if (solve_cmd->parsed()) {
        qcbo::ProblemInstance instance = qcbo::load_instance(solve_opt.instance_path);
        qcbo::RunManifest manifest = qcbo::solve(instance, resolve(solve_opt));
        qcbo::write_run_outputs(manifest, solve_opt.out, partition_report);
        std::cout << "mode=" << qcbo::to_string(manifest.mode) << " objective=" << manifest.objective
                  << " provision=" << manifest.provision_total << " dpo_count=" << manifest.dpo_count
                  << '\n'
                  << "wrote " << solve_opt.out << "/manifest.json" << '\n';
        return 0;
    }

    if (sweep_cmd->parsed()) {
        qcbo::ProblemInstance instance = qcbo::load_instance(sweep_opt.instance_path);
        auto rows = qcbo::sweep(instance, resolve(sweep_opt), grid);
        std::filesystem::create_directories(sweep_opt.out);
        auto path = std::filesystem::path(sweep_opt.out) / "sweep.csv";
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        qcbo::write_sweep_csv(rows, out);
        std::cout << "wrote " << path.string() << '\n';
        return 0;
    }

    // oracle
    qcbo::ProblemInstance instance = qcbo::load_instance(oracle_instance);
    std::optional<double> cap;
    if (oracle_cap >= 0.0) cap = oracle_cap;
    qcbo::OracleResult result = qcbo::brute_force_best(instance, cap);
    json doc;
    doc["feasible"] = result.feasible();
    doc["provision_cap"] = cap ? json(*cap) : json(nullptr);
    if (result.feasible()) {
        doc["assignment"] = result.assignment->actions();
        doc["objective"] = result.objective;
        doc["provision"] = qcbo::provision(instance, *result.assignment);
        doc["dpo_count"] = qcbo::dpo_count(*result.assignment);
    }
    std::ofstream out(oracle_out);
    if (!out) throw std::runtime_error("cannot write " + oracle_out);
    out << doc.dump(2) << '\n';
    std::cout << "wrote " << oracle_out << '\n';
    return result.feasible() ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const qcbo::GuardError& e) {
        std::cerr << "guard violation: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
