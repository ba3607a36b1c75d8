#include <benchmark/benchmark.h>

#include <limits>
#include <vector>

#include "qcbo/datagen.hpp"
#include "qcbo/gpr.hpp"
#include "qcbo/partition.hpp"
#include "qcbo/rng.hpp"

namespace {

using namespace qcbo;

ProblemInstance bench_instance(int n_loanees) {
    GenConfig gen;
    gen.n_loanees = n_loanees;
    gen.n_actions = 5;
    gen.mean_degree = 2.0;
    gen.seed = 600;
    return generate_instance(gen, 0.5);
}

void BM_divide(benchmark::State& state) {
    ProblemInstance inst = bench_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto groups = divide(inst, 7, 1);
        benchmark::DoNotOptimize(groups.data());
    }
}

void BM_gpr_step(benchmark::State& state) {
    ProblemInstance inst = bench_instance(static_cast<int>(state.range(0)));
    Rng rng(3);
    std::vector<int> actions(static_cast<std::size_t>(inst.n_loanees));
    for (auto& a : actions) a = rng.uniform_int(1, inst.n_actions);
    ActionAssignment assignment(actions, inst.n_actions);
    for (auto _ : state) {
        auto step = gpr_step(inst, assignment);
        benchmark::DoNotOptimize(step);
    }
}

void BM_run_gpr_full(benchmark::State& state) {
    ProblemInstance inst = bench_instance(static_cast<int>(state.range(0)));
    Rng rng(4);
    std::vector<int> actions(static_cast<std::size_t>(inst.n_loanees));
    for (auto& a : actions) a = rng.uniform_int(1, inst.n_actions);
    ActionAssignment start(actions, inst.n_actions);
    for (auto _ : state) {
        GprResult res = run_gpr(inst, start, std::nullopt, std::numeric_limits<long>::max());
        benchmark::DoNotOptimize(res.trace.steps.size());
    }
}

} // namespace

BENCHMARK(BM_divide)->Arg(100)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gpr_step)->Arg(100)->Arg(600)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_run_gpr_full)->Arg(100)->Arg(600)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
