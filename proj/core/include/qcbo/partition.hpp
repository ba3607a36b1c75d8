#ifndef QCBO_PARTITION_HPP
#define QCBO_PARTITION_HPP

#include <cstdint>
#include <vector>

#include "qcbo/graph.hpp"
#include "qcbo/problem.hpp"

namespace qcbo {

/// A subproblem produced by recursive division. `core` loanees are owned
/// by this group (cores partition 1..N across groups); `edge_nodes` are
/// outside loanees duplicated into the group because they share an
/// association edge with it. Every edge node is adjacent to at least one
/// member listed before it.
struct Group {
    std::vector<int> core;       // sorted ascending
    std::vector<int> edge_nodes; // insertion order

    /// core + edge_nodes, sorted ascending. This order defines the
    /// digit order of the group's subspace configurations.
    std::vector<int> members() const;
    bool contains(int node) const;
};

/// Weighted modularity of a node partition; 0 for edgeless graphs.
double modularity(const AssocGraph& graph, const std::vector<std::vector<int>>& communities);

/// Clauset-Newman-Moore agglomeration: repeatedly merge the community
/// pair with the largest modularity gain until no merge improves it.
/// Ties prefer the lexicographically smallest (min-id, min-id) pair, so
/// the result is deterministic. Communities are returned sorted by
/// smallest member id.
std::vector<std::vector<int>> greedy_modularity(const AssocGraph& graph);

/// Louvain method: seeded local-move sweeps plus aggregation until the
/// modularity gain drops below 1e-12. The node sweep order is fixed by
/// the seed.
std::vector<std::vector<int>> louvain(const AssocGraph& graph, std::uint64_t seed);

/// Appends every node outside the group that is adjacent to one of its
/// members. Existing members and edge nodes are kept.
Group add_edge_nodes(const Group& group, const AssocGraph& graph);

/// Recursive division: greedy modularity on the full graph, then
/// Louvain splits with edge-node augmentation until every group has at
/// most max_group_size members. Cores partition {1..N}.
std::vector<Group> divide(const ProblemInstance& instance, int max_group_size, std::uint64_t seed);

} // namespace qcbo

#endif // QCBO_PARTITION_HPP
