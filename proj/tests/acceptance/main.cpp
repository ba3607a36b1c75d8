// Acceptance suite: one check per release criterion, each printed as a
// single PASS/FAIL line. Exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "qcbo/datagen.hpp"
#include "qcbo/gpr.hpp"
#include "qcbo/oracle.hpp"
#include "qcbo/partition.hpp"
#include "qcbo/pipeline.hpp"
#include "qcbo/problem.hpp"
#include "qcbo/qaoa.hpp"
#include "qcbo/reconstruct.hpp"
#include "qcbo/rng.hpp"
#include "test_instances.hpp"

using namespace qcbo;
using qcbo::testing::random_instance;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> body;
};

constexpr long kUnbounded = std::numeric_limits<long>::max();

bool check(bool ok, const std::string& what, std::string& detail) {
    if (!ok && detail.empty()) detail = what;
    return ok;
}

bool is_one_hot(const ActionAssignment& a) {
    // decode(encode(.)) throws unless every block is one-hot.
    try {
        return decode_bits(encode_bits(a, a.n_actions()), a.size(), a.n_actions()) == a;
    } catch (const std::exception&) {
        return false;
    }
}

// ---------------------------------------------------------------- 1 --
bool subspace_dense_equivalence(std::string& detail) {
    Rng rng(substream_seed(20260811, "acceptance.c1"));
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
        ProblemInstance inst =
            random_instance(2, 3, rng.next_double() * 0.9, 5000 + static_cast<std::uint64_t>(trial));
        Group group{{1, 2}, {}};
        std::vector<double> theta(4);
        for (auto& t : theta) t = rng.uniform(-2.0, 2.0);

        GroupHamiltonians hams = build_hamiltonians(inst, group, inst.epsilon);
        SubspaceState sub = evolve(initial_state(group, 3), hams, theta);
        auto dense = dense_qaoa_reference(inst, group, inst.epsilon, theta);

        for (std::size_t c = 0; c < sub.amplitudes.size(); ++c) {
            auto actions = index_to_actions(c, 2, 3);
            auto diff = std::abs(dense[dense_basis_index(actions, 3)] - sub.amplitudes[c]);
            ok &= check(diff <= 1e-9, "one-hot amplitude mismatch " + std::to_string(diff), detail);
        }
        for (std::size_t s = 0; s < dense.size(); ++s) {
            bool onehot = true;
            for (int p = 0; p < 2; ++p) {
                auto bits = (s >> (3 * p)) & 0x7u;
                if (bits != 1 && bits != 2 && bits != 4) onehot = false;
            }
            if (!onehot) {
                ok &= check(std::abs(dense[s]) <= 1e-12, "leak outside the one-hot sector", detail);
            }
        }
    }
    return ok;
}

// ---------------------------------------------------------------- 2 --
bool constraint_preservation(std::string& detail) {
    bool ok = true;
    QaoaConfig qaoa_config;
    qaoa_config.cycles = 2;
    qaoa_config.max_evaluations = 30;
    qaoa_config.restarts = 1;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int n = 4 + static_cast<int>(seed % 17); // 4..20
        ProblemInstance inst = random_instance(n, 3, 0.5, 10000 + seed, 0.25);
        auto groups = divide(inst, 4, seed);
        std::vector<std::vector<double>> dists;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            dists.push_back(optimize_group(inst, groups[g], inst.epsilon, qaoa_config,
                                           substream_seed(seed, "c2", g))
                                .probabilities);
        }
        ReconstructResult recon = reconstruct(groups, dists, inst, 6, seed);
        ok &= check(is_one_hot(recon.assignment), "reconstructed assignment not one-hot", detail);

        GprResult gpr = run_gpr(inst, recon.assignment, std::nullopt, kUnbounded);
        ActionAssignment current = recon.assignment;
        for (const auto& s : gpr.trace.steps) {
            current = current.with_action(s.loanee, s.to_action);
            ok &= check(is_one_hot(current), "GPR step broke one-hot", detail);
        }
        ok &= check(current == gpr.assignment, "trace does not replay to the final state", detail);
    }
    return ok;
}

// ---------------------------------------------------------------- 3 --
bool closed_form_mixer(std::string& detail) {
    ProblemInstance inst;
    inst.n_loanees = 1;
    inst.n_actions = 2;
    inst.h = {0.3, 0.9};
    inst.l = {0.0, 0.0};
    inst.assoc = AssocGraph(1);
    inst.epsilon = 0.0;
    Group group{{1}, {}};
    GroupHamiltonians hams = build_hamiltonians(inst, group, 0.0);
    SubspaceState psi0 = initial_state(group, 2);
    bool ok = true;
    for (int k = 0; k < 100; ++k) {
        double beta = -1.5 + 3.2 * k / 99.0;
        std::vector<double> theta{0.8, beta};
        SubspaceState out = evolve(psi0, hams, theta);
        double expected = std::sin(2.0 * beta) * std::sin(2.0 * beta);
        double got = std::norm(out.amplitudes[1]);
        ok &= check(std::abs(got - expected) <= 1e-10,
                    "flip probability off by " + std::to_string(std::abs(got - expected)), detail);
    }
    return ok;
}

// ---------------------------------------------------------------- 4 --
bool gpr_monotonicity(std::string& detail) {
    bool ok = true;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int n = 5 + static_cast<int>(seed % 26);      // 5..30
        const int m = 2 + static_cast<int>(seed % 4);       // 2..5
        ProblemInstance inst = random_instance(n, m, (seed % 10) * 0.09, 20000 + seed, 0.2);
        Rng rng(substream_seed(seed, "c4.start"));
        std::vector<int> actions(static_cast<std::size_t>(n));
        for (auto& a : actions) a = rng.uniform_int(1, m);

        GprResult res = run_gpr(inst, ActionAssignment(actions, m), std::nullopt, kUnbounded);
        ok &= check(res.trace.termination != GprTermination::IterationCap,
                    "GPR hit the unbounded guard", detail);
        double prev_y = res.trace.initial_objective;
        double prev_p = res.trace.initial_provision;
        for (const auto& s : res.trace.steps) {
            ok &= check(s.provision_after <= prev_p + 1e-12, "provision increased", detail);
            if (s.provision_after >= prev_p - 1e-15) {
                ok &= check(s.objective_after > prev_y, "flat step without objective gain", detail);
            }
            prev_y = s.objective_after;
            prev_p = s.provision_after;
        }
    }
    return ok;
}

// ---------------------------------------------------------------- 5 --
bool half_optimality(std::string& detail) {
    bool ok = true;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const int n = 2 + static_cast<int>(seed % 5); // 2..6
        const int m = 2 + static_cast<int>(seed % 2); // 2..3
        ProblemInstance inst = random_instance(n, m, 0.0, 30000 + seed);

        // 40th percentile of the provision over all M^N assignments.
        std::size_t total = 1;
        for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(m);
        std::vector<double> provisions;
        provisions.reserve(total);
        for (std::size_t idx = 0; idx < total; ++idx) {
            ActionAssignment a(index_to_actions(idx, n, m), m);
            provisions.push_back(provision(inst, a));
        }
        std::sort(provisions.begin(), provisions.end());
        double cap = provisions[(provisions.size() - 1) * 2 / 5];

        OracleResult constrained = brute_force_best(inst, cap);
        if (!constrained.feasible()) {
            ok &= check(false, "percentile cap unexpectedly infeasible", detail);
            continue;
        }
        OracleResult unconstrained = brute_force_best(inst);
        GprResult res = run_gpr(inst, *unconstrained.assignment, cap, kUnbounded);
        ok &= check(objective(inst, res.assignment) >= 0.5 * constrained.objective - 1e-12,
                    "seed " + std::to_string(seed) + " fell below half the optimum", detail);
    }
    return ok;
}

// ---------------------------------------------------------------- 6 --
bool oracle_upper_bound(std::string& detail) {
    bool ok = true;
    RunConfig config;
    config.max_group_size = 4;
    config.cycles = 2;
    config.qaoa_evaluations = 60;
    config.restarts = 2;
    config.max_candidates = 6;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n = 3 + static_cast<int>(seed % 4); // 3..6
        for (double eps : {0.0, 0.5}) {
            ProblemInstance inst = random_instance(n, 3, eps, 40000 + seed, 0.4);
            config.seed = seed;
            RunManifest m = solve(inst, config);
            OracleResult oracle = brute_force_best(inst);
            ok &= check(m.objective <= oracle.objective + 1e-9,
                        "hybrid exceeded the oracle at seed " + std::to_string(seed), detail);
        }
    }
    return ok;
}

// ---------------------------------------------------------------- 7 --
bool hybrid_vs_standalone(std::string& detail) {
    bool ok = true;
    RunConfig config;
    config.max_group_size = 7;
    config.cycles = 2;
    config.qaoa_evaluations = 120;
    config.restarts = 2;
    config.max_candidates = 10;

    std::vector<double> hybrid_y, standalone_y;
    std::printf("        per-seed results (N = 100, M = 5, nu = 7, T = 2, eps = 0.5):\n");
    std::printf("        %-6s %-15s %-10s %-12s %-12s\n", "seed", "mode", "dpo_count",
                "bank_profit", "objective");
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        GenConfig gen;
        gen.n_loanees = 100;
        gen.n_actions = 5;
        gen.seed = 77000 + seed;
        ProblemInstance inst = generate_instance(gen, 0.5);
        config.seed = seed;

        config.mode = SolveMode::Hybrid;
        RunManifest hybrid = solve(inst, config);
        config.mode = SolveMode::StandaloneGpr;
        RunManifest standalone = solve(inst, config);

        hybrid_y.push_back(hybrid.objective);
        standalone_y.push_back(standalone.objective);
        std::printf("        %-6llu %-15s %-10d %-12.4f %-12.4f\n",
                    static_cast<unsigned long long>(seed), "hybrid", hybrid.dpo_count,
                    hybrid.bank_profit, hybrid.objective);
        std::printf("        %-6llu %-15s %-10d %-12.4f %-12.4f\n",
                    static_cast<unsigned long long>(seed), "standalone-gpr",
                    standalone.dpo_count, standalone.bank_profit, standalone.objective);
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        std::size_t n = v.size();
        return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };
    double mh = median(hybrid_y);
    double ms = median(standalone_y);
    std::printf("        median objective: hybrid %.4f vs standalone %.4f\n", mh, ms);
    ok &= check(mh >= ms, "hybrid median fell below the standalone median", detail);
    return ok;
}

// ---------------------------------------------------------------- 8 --
bool datagen_statistics(std::string& detail) {
    bool ok = true;
    {
        GenConfig cfg;
        cfg.n_loanees = 2000;
        cfg.n_actions = 5;
        cfg.seed = 321;
        std::vector<double> h = gen_h(cfg);
        for (int i = 0; i < cfg.n_loanees; ++i) {
            double row = 0.0;
            for (int j = 0; j < 5; ++j) row += h[static_cast<std::size_t>(i) * 5 + j];
            ok &= check(std::abs(row - 1.0) <= 1e-12, "profit row not normalized", detail);
        }
    }
    {
        double mean_degree = 0.0;
        for (int s = 0; s < 10; ++s) {
            GenConfig cfg;
            cfg.n_loanees = 600;
            cfg.n_actions = 5;
            cfg.seed = static_cast<std::uint64_t>(888 + s);
            AssocGraph g = gen_assoc(cfg);
            mean_degree += 2.0 * static_cast<double>(g.n_edges()) / g.n_nodes();
        }
        mean_degree /= 10.0;
        ok &= check(std::abs(mean_degree - 2.0) <= 0.3,
                    "mean degree " + std::to_string(mean_degree), detail);
    }
    {
        GenConfig cfg;
        cfg.n_loanees = 10000;
        cfg.n_actions = 5;
        cfg.seed = 1234;
        std::vector<double> h = gen_h(cfg);
        std::vector<int> counts(5, 0);
        for (int i = 0; i < cfg.n_loanees; ++i) {
            const double* row = h.data() + static_cast<std::size_t>(i) * 5;
            ++counts[static_cast<std::size_t>(std::max_element(row, row + 5) - row)];
        }
        for (int j = 1; j <= 3; ++j) {
            ok &= check(counts[0] > counts[static_cast<std::size_t>(j)], "left peak missing", detail);
            ok &= check(counts[4] > counts[static_cast<std::size_t>(j)], "right peak missing", detail);
        }
    }
    return ok;
}

// ---------------------------------------------------------------- 9 --
bool partition_contracts(std::string& detail) {
    bool ok = true;
    Rng rng(substream_seed(9, "acceptance.c9"));
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 20 + static_cast<int>(rng.uniform_int(0, 180));
        GenConfig cfg;
        cfg.n_loanees = n;
        cfg.n_actions = 2;
        cfg.mean_degree = 1.0 + 3.0 * rng.next_double();
        cfg.seed = 60000 + static_cast<std::uint64_t>(trial);
        ProblemInstance inst;
        inst.n_loanees = n;
        inst.n_actions = 2;
        inst.h.assign(static_cast<std::size_t>(n) * 2, 0.0);
        inst.l.assign(static_cast<std::size_t>(n) * 2, 0.0);
        inst.assoc = gen_assoc(cfg);
        inst.epsilon = 0.5;

        auto groups = divide(inst, 7, cfg.seed);
        std::vector<int> owner(static_cast<std::size_t>(n) + 1, 0);
        for (const auto& g : groups) {
            ok &= check(g.members().size() <= 7, "group exceeds the size bound", detail);
            for (int u : g.core) {
                ok &= check(owner[static_cast<std::size_t>(u)] == 0, "core overlap", detail);
                owner[static_cast<std::size_t>(u)] = 1;
            }
        }
        for (int u = 1; u <= n; ++u) {
            ok &= check(owner[static_cast<std::size_t>(u)] == 1, "loanee owned by no core", detail);
        }

        auto again = divide(inst, 7, cfg.seed);
        bool same = groups.size() == again.size();
        for (std::size_t g = 0; same && g < groups.size(); ++g) {
            same = groups[g].core == again[g].core && groups[g].edge_nodes == again[g].edge_nodes;
        }
        ok &= check(same, "divide not deterministic", detail);
    }
    return ok;
}

// --------------------------------------------------------------- 10 --
bool end_to_end_determinism(std::string& detail) {
    GenConfig gen;
    gen.n_loanees = 30;
    gen.n_actions = 4;
    gen.seed = 5150;
    ProblemInstance inst = generate_instance(gen, 0.5);
    RunConfig config;
    config.max_group_size = 5;
    config.qaoa_evaluations = 80;
    config.restarts = 2;
    config.seed = 7;

    bool ok = true;
    RunManifest a = solve(inst, config);
    RunManifest b = solve(inst, config);
    ok &= check(manifest_json(a, false) == manifest_json(b, false),
                "hybrid manifests differ", detail);

    config.mode = SolveMode::StandaloneGpr;
    RunManifest c = solve(inst, config);
    RunManifest d = solve(inst, config);
    ok &= check(manifest_json(c, false) == manifest_json(d, false),
                "standalone manifests differ", detail);
    return ok;
}

} // namespace

int main() {
    std::vector<Criterion> criteria{
        {"subspace-dense equivalence (N'=2, M=3, T=2)", subspace_dense_equivalence},
        {"constraint preservation through reconstruct and GPR", constraint_preservation},
        {"closed-form mixer flip probability sin^2(2 beta)", closed_form_mixer},
        {"GPR provision monotonicity and termination", gpr_monotonicity},
        {"GPR half-optimality under a provision cap", half_optimality},
        {"hybrid objective bounded by the brute-force oracle", oracle_upper_bound},
        {"hybrid vs standalone medians on synthetic instances", hybrid_vs_standalone},
        {"synthetic data statistics", datagen_statistics},
        {"partition contracts on random graphs", partition_contracts},
        {"end-to-end determinism of solve manifests", end_to_end_determinism},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%2zu/%zu] %-55s %s (%.2fs)\n", i + 1, criteria.size(),
                    criteria[i].name.c_str(), ok ? "PASS" : "FAIL", secs);
        if (!ok) {
            ++failed;
            std::printf("        -> %s\n", detail.c_str());
        }
    }
    if (failed != 0) {
        std::printf("%d criterion(s) failed\n", failed);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
