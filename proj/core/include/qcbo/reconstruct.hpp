#ifndef QCBO_RECONSTRUCT_HPP
#define QCBO_RECONSTRUCT_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qcbo/partition.hpp"
#include "qcbo/problem.hpp"

namespace qcbo {

/// A configuration index with its sampling probability.
struct ScoredConfig {
    std::size_t index = 0;
    double probability = 0.0;
};

/// The max_candidates most probable configurations; ties prefer the
/// smaller mixed-radix index. Configurations with zero probability are
/// still eligible (the distribution's full support is its index range).
std::vector<ScoredConfig> top_candidates(std::span<const double> probabilities,
                                         int max_candidates);

/// A partial assignment over the loanees covered so far. actions[i] is
/// the action of loanee i (1-based indexing; 0 = not covered).
struct Candidate {
    std::vector<int> actions;
    double probability = 1.0;
    double score = 0.0; // objective restricted to the covered sub-model

    bool covers(int loanee) const { return actions[static_cast<std::size_t>(loanee)] != 0; }
};

/// Objective restricted to covered loanees: their profit terms plus
/// association edges with both endpoints covered.
double objective_on_covered(const ProblemInstance& instance, const std::vector<int>& actions);

/// Merges two candidates when their actions agree on every shared node;
/// std::nullopt signals incompatibility. The merged probability is the
/// product; the score is left to the caller.
std::optional<Candidate> combine(const Candidate& left, const Candidate& right,
                                 std::span<const int> shared_nodes);

struct ReconstructResult {
    ActionAssignment assignment;
    bool forced_merge = false; // a merge had to override shared actions
};

/// Folds per-group distributions into one full assignment: groups are
/// merged in order of descending member count (ties by smallest member
/// id), keeping at most max_candidates best-objective partial
/// assignments per step. When no top candidates are compatible, the
/// right group's configurations are enumerated in descending
/// probability until one merges.
ReconstructResult reconstruct(const std::vector<Group>& groups,
                              const std::vector<std::vector<double>>& distributions,
                              const ProblemInstance& instance, int max_candidates,
                              std::uint64_t seed);

} // namespace qcbo

#endif // QCBO_RECONSTRUCT_HPP
