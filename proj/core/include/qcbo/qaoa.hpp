#ifndef QCBO_QAOA_HPP
#define QCBO_QAOA_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qcbo/partition.hpp"
#include "qcbo/problem.hpp"

namespace qcbo {

/// Order of the two operators within one driving cycle. The default
/// applies the mixer first, then the diagonal cost phase.
enum class StepOrder { MixerThenCost, CostThenMixer };

struct QaoaConfig {
    int cycles = 2;           // driving cycles T
    int max_evaluations = 200; // optimizer budget per restart
    int restarts = 4;
    StepOrder order = StepOrder::MixerThenCost;
};

/// Dimension of the one-hot subspace, M^N'.
std::size_t subspace_dimension(int n_members, int n_actions);

/// Mixed-radix decoding of a configuration index: digit i is the action
/// (1-based) of the i-th member; member 0 is the most significant digit.
std::vector<int> index_to_actions(std::size_t index, int n_members, int n_actions);
std::size_t actions_to_index(std::span<const int> actions, int n_actions);

/// Cost and mixer Hamiltonians restricted to a group's one-hot subspace.
/// cost_diag[c] is the cost eigenvalue of configuration c (the negated
/// group-restricted objective); mixer_block is the M x M single-
/// excitation restriction of the XY ring for one loanee.
struct GroupHamiltonians {
    std::vector<int> members; // sorted loanee ids; defines digit order
    int n_actions = 0;
    std::vector<double> cost_diag;
    std::vector<double> mixer_block; // row-major M x M
    double coupling = 1.0;           // J
};

GroupHamiltonians build_hamiltonians(const ProblemInstance& instance, const Group& group,
                                     double epsilon);

/// Amplitudes over a group's one-hot configurations, mixed-radix indexed.
struct SubspaceState {
    int n_members = 0;
    int n_actions = 0;
    std::vector<std::complex<double>> amplitudes;

    double norm() const;
};

/// Point mass on the all-DPO configuration (every member takes action 1).
SubspaceState initial_state(const Group& group, int n_actions);

/// Applies T driving cycles. theta is (gamma_1, beta_1, ..., gamma_T,
/// beta_T); within each cycle the mixer uses beta and the diagonal cost
/// phase uses gamma, in the order given. Norm is preserved.
SubspaceState evolve(const SubspaceState& state, const GroupHamiltonians& hams,
                     std::span<const double> theta,
                     StepOrder order = StepOrder::MixerThenCost);

/// Expectation of the cost Hamiltonian in the given state.
double energy(const SubspaceState& state, const GroupHamiltonians& hams);

struct GroupSolution {
    std::vector<double> theta;         // best parameters found
    double energy = 0.0;               // cost expectation at theta
    std::vector<double> probabilities; // |amplitude|^2 per configuration
};

/// Minimizes the cost expectation over theta with a derivative-free
/// local optimizer restarted from seeded random points in [0,1)^{2T},
/// then returns the sampling distribution of the best state found.
GroupSolution optimize_group(const ProblemInstance& instance, const Group& group, double epsilon,
                             const QaoaConfig& config, std::uint64_t seed);

} // namespace qcbo

#endif // QCBO_QAOA_HPP
