#include "qcbo/gpr.hpp"

#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace qcbo {

double finesse(double reward, double penalty) {
    if (reward < 0.0) return kBlockedSwitch;
    if (penalty <= 0.0) return reward;
    if (reward == 0.0) return kBlockedSwitch;
    return -penalty / reward;
}

namespace {

struct BestSwitch {
    double score = kBlockedSwitch;
    int loanee = 0;
    int to_action = 0;
    double delta_objective = 0.0;
    double delta_provision = 0.0; // negative of the reward
};

/// Scans all single-action switches; candidates with zero effect on
/// both provision and objective are never selectable (they would let
/// the greedy loop cycle forever).
std::optional<BestSwitch> best_switch(const ProblemInstance& instance,
                                      const ActionAssignment& assignment) {
    BestSwitch best;
    bool found = false;
    const double eps = instance.epsilon;
    for (int i = 1; i <= instance.n_loanees; ++i) {
        const int j = assignment.action(i);
        // Association mass of i's non-DPO neighbors: the only coupling
        // term a switch of loanee i can toggle.
        double active_neighbor_weight = 0.0;
        if (eps != 0.0) {
            for (const auto& [v, w] : instance.assoc.neighbors(i)) {
                if (assignment.action(v) != 1) active_neighbor_weight += w;
            }
        }
        for (int to = 1; to <= instance.n_actions; ++to) {
            if (to == j) continue;
            const double reward = instance.l_at(i, j) - instance.l_at(i, to);
            double delta_y = (1.0 - eps) * (instance.h_at(i, to) - instance.h_at(i, j));
            if (eps != 0.0 && (to == 1) != (j == 1)) {
                delta_y += eps * active_neighbor_weight * (to == 1 ? -1.0 : 1.0);
            }
            const double penalty = -delta_y;
            if (reward == 0.0 && penalty == 0.0) continue; // no-op switch
            const double score = finesse(reward, penalty);
            if (score == kBlockedSwitch) continue;
            if (!found || score > best.score) {
                best = {score, i, to, delta_y, -reward};
                found = true;
            }
        }
    }
    if (!found) return std::nullopt;
    return best;
}

} // namespace

namespace {

std::pair<ActionAssignment, GprStepRecord> apply_switch(const ProblemInstance& instance,
                                                        const ActionAssignment& assignment,
                                                        const BestSwitch& best) {
    ActionAssignment next = assignment.with_action(best.loanee, best.to_action);
    GprStepRecord record;
    record.loanee = best.loanee;
    record.from_action = assignment.action(best.loanee);
    record.to_action = best.to_action;
    record.objective_after = objective(instance, next);
    record.provision_after = provision(instance, next);
    return {std::move(next), record};
}

} // namespace

std::optional<std::pair<ActionAssignment, GprStepRecord>> gpr_step(
    const ProblemInstance& instance, const ActionAssignment& assignment) {
    if (assignment.size() != instance.n_loanees) {
        throw std::invalid_argument("gpr_step: assignment does not match instance");
    }
    auto best = best_switch(instance, assignment);
    if (!best) return std::nullopt;
    return apply_switch(instance, assignment, *best);
}

GprResult run_gpr(const ProblemInstance& instance, const ActionAssignment& start,
                  std::optional<double> provision_cap, long max_steps) {
    if (max_steps < 0) throw std::invalid_argument("run_gpr: max_steps must be >= 0");
    GprResult result{start, {}};
    result.trace.initial_objective = objective(instance, start);
    result.trace.initial_provision = provision(instance, start);

    double current_provision = result.trace.initial_provision;
    long steps = 0;
    while (true) {
        if (provision_cap && current_provision <= *provision_cap) {
            result.trace.termination = GprTermination::CapReached;
            break;
        }
        if (steps >= max_steps) {
            result.trace.termination = GprTermination::IterationCap;
            break;
        }
        auto best = best_switch(instance, result.assignment);
        // Without a cap there is nothing to force negative-finesse
        // switches: the reduction stops once every remaining switch
        // would trade objective for provision.
        if (!best || (!provision_cap && best->score < 0.0)) {
            result.trace.termination = GprTermination::AllBlocked;
            break;
        }
        auto [next, record] = apply_switch(instance, result.assignment, *best);
        result.assignment = std::move(next);
        result.trace.steps.push_back(record);
        current_provision = record.provision_after;
        ++steps;
    }
    return result;
}

void write_trace_csv(const GprTrace& trace, std::ostream& out) {
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    out << "step,loanee,from_action,to_action,objective,provision\n";
    out << "0,,,," << trace.initial_objective << ',' << trace.initial_provision << '\n';
    std::size_t k = 1;
    for (const GprStepRecord& s : trace.steps) {
        out << k++ << ',' << s.loanee << ',' << s.from_action << ',' << s.to_action << ','
            << s.objective_after << ',' << s.provision_after << '\n';
    }
}

} // namespace qcbo
