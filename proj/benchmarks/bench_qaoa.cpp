#include <benchmark/benchmark.h>

#include <vector>

#include "qcbo/datagen.hpp"
#include "qcbo/qaoa.hpp"
#include "qcbo/rng.hpp"

namespace {

using namespace qcbo;

/// One evolve call on a full-size group: N' members, M = 5 actions.
void BM_subspace_evolve(benchmark::State& state) {
    const int n_members = static_cast<int>(state.range(0));
    GenConfig gen;
    gen.n_loanees = n_members;
    gen.n_actions = 5;
    gen.mean_degree = 2.0;
    gen.seed = 42;
    ProblemInstance inst = generate_instance(gen, 0.5);
    std::vector<int> core(static_cast<std::size_t>(n_members));
    for (int i = 0; i < n_members; ++i) core[static_cast<std::size_t>(i)] = i + 1;
    Group group{core, {}};
    GroupHamiltonians hams = build_hamiltonians(inst, group, inst.epsilon);
    SubspaceState psi0 = initial_state(group, 5);
    std::vector<double> theta{0.4, 0.7, 0.2, 1.1};
    for (auto _ : state) {
        SubspaceState out = evolve(psi0, hams, theta);
        benchmark::DoNotOptimize(out.amplitudes.data());
    }
    state.SetComplexityN(state.range(0));
}

void BM_build_hamiltonians(benchmark::State& state) {
    const int n_members = static_cast<int>(state.range(0));
    GenConfig gen;
    gen.n_loanees = n_members;
    gen.n_actions = 5;
    gen.seed = 7;
    ProblemInstance inst = generate_instance(gen, 0.5);
    std::vector<int> core(static_cast<std::size_t>(n_members));
    for (int i = 0; i < n_members; ++i) core[static_cast<std::size_t>(i)] = i + 1;
    Group group{core, {}};
    for (auto _ : state) {
        GroupHamiltonians hams = build_hamiltonians(inst, group, inst.epsilon);
        benchmark::DoNotOptimize(hams.cost_diag.data());
    }
}

void BM_optimize_group(benchmark::State& state) {
    GenConfig gen;
    gen.n_loanees = 5;
    gen.n_actions = 5;
    gen.seed = 11;
    ProblemInstance inst = generate_instance(gen, 0.5);
    Group group{{1, 2, 3, 4, 5}, {}};
    QaoaConfig config;
    config.max_evaluations = 100;
    config.restarts = 1;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        GroupSolution sol = optimize_group(inst, group, inst.epsilon, config, seed++);
        benchmark::DoNotOptimize(sol.energy);
    }
}

} // namespace

BENCHMARK(BM_subspace_evolve)->DenseRange(3, 7)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_build_hamiltonians)->DenseRange(3, 7)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_optimize_group)->Unit(benchmark::kMillisecond);
