#ifndef QCBO_ORACLE_HPP
#define QCBO_ORACLE_HPP

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "qcbo/partition.hpp"
#include "qcbo/problem.hpp"
#include "qcbo/qaoa.hpp"

namespace qcbo {

/// Exhaustive search result. `assignment` is empty when a provision cap
/// admits no feasible assignment at all.
struct OracleResult {
    std::optional<ActionAssignment> assignment;
    double objective = 0.0;
    std::optional<double> provision_cap;

    bool feasible() const { return assignment.has_value(); }
};

/// Maximizes the objective over all M^N assignments, optionally subject
/// to provision <= cap. Ties keep the smallest mixed-radix index.
/// Throws GuardError when M^N exceeds 10^7.
OracleResult brute_force_best(const ProblemInstance& instance,
                              std::optional<double> provision_cap = {});

/// Basis index of a one-hot configuration in the full 2^(N' M) Hilbert
/// space: qubit (member position p, action j) is bit p*M + (j-1).
std::size_t dense_basis_index(std::span<const int> actions, int n_actions);

/// Literal full-Hilbert QAOA evolution: builds the cost and XY-mixer
/// Hamiltonians as explicit 2^(N' M) operators and applies exact matrix
/// exponentials from the all-DPO basis state. Validation-only; guarded
/// to N' * M <= 12 qubits.
std::vector<std::complex<double>> dense_qaoa_reference(const ProblemInstance& instance,
                                                       const Group& group, double epsilon,
                                                       std::span<const double> theta,
                                                       StepOrder order = StepOrder::MixerThenCost);

} // namespace qcbo

#endif // QCBO_ORACLE_HPP
