#ifndef QCBO_GPR_HPP
#define QCBO_GPR_HPP

#include <iosfwd>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "qcbo/problem.hpp"

namespace qcbo {

/// Finesse value marking a switch that must never be taken.
inline constexpr double kBlockedSwitch = -std::numeric_limits<double>::infinity();

/// Finesse score of a proposed single-action switch.
/// reward  a: reduction in total provision,
/// penalty b: reduction in the objective.
///   a >= 0, b <= 0  -> a        (free or beneficial: rank by reward)
///   a > 0,  b > 0   -> -b / a   (pay objective per unit of provision)
///   a < 0, or a = 0 with b > 0 -> blocked
double finesse(double reward, double penalty);

struct GprStepRecord {
    int loanee = 0;
    int from_action = 0;
    int to_action = 0;
    double objective_after = 0.0;
    double provision_after = 0.0;
};

enum class GprTermination { CapReached, AllBlocked, IterationCap };

struct GprTrace {
    double initial_objective = 0.0;
    double initial_provision = 0.0;
    std::vector<GprStepRecord> steps;
    GprTermination termination = GprTermination::AllBlocked;
};

/// One greedy step: scores all N x (M-1) switches and applies the best
/// selectable one (ties: smallest loanee, then smallest target action).
/// Returns std::nullopt when every candidate is blocked or a no-op.
std::optional<std::pair<ActionAssignment, GprStepRecord>> gpr_step(
    const ProblemInstance& instance, const ActionAssignment& assignment);

struct GprResult {
    ActionAssignment assignment;
    GprTrace trace;
};

/// Repeats the greedy switch until the provision drops to the cap (when
/// given), no admissible candidate remains, or max_steps is exhausted.
/// With a cap, negative-finesse switches are taken as long as the cap
/// is unmet; without one the run stops at the objective plateau, where
/// any further reduction would cost objective. Each accepted step
/// strictly decreases (provision, -objective) lexicographically, so the
/// loop terminates even with an unbounded step budget.
GprResult run_gpr(const ProblemInstance& instance, const ActionAssignment& start,
                  std::optional<double> provision_cap, long max_steps);

/// CSV trace: step,loanee,from_action,to_action,objective,provision.
/// Step 0 carries the initial objective and provision.
void write_trace_csv(const GprTrace& trace, std::ostream& out);

} // namespace qcbo

#endif // QCBO_GPR_HPP
