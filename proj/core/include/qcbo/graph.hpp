#ifndef QCBO_GRAPH_HPP
#define QCBO_GRAPH_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace qcbo {

struct WeightedEdge {
    int u; // smaller endpoint, 1-based
    int v; // larger endpoint
    double weight;
};

/// Weighted undirected association graph on loanee ids 1..N.
/// Each edge is stored once; no self-loops; weights strictly positive.
class AssocGraph {
public:
    AssocGraph() = default;
    explicit AssocGraph(int n_nodes);

    int n_nodes() const { return n_nodes_; }
    std::size_t n_edges() const { return edges_.size(); }

    /// Adds {u, v} with the given weight. Throws on self-loops, ids out of
    /// range, non-positive weights and duplicate edges (in either order).
    void add_edge(int u, int v, double weight);

    bool has_edge(int u, int v) const;
    /// Weight of {u, v}, or 0 when the edge is absent.
    double weight(int u, int v) const;

    /// Neighbors of u as (node, weight) pairs, sorted by node id.
    const std::vector<std::pair<int, double>>& neighbors(int u) const;

    const std::vector<WeightedEdge>& edges() const { return edges_; }

    int degree(int u) const { return static_cast<int>(neighbors(u).size()); }
    double weighted_degree(int u) const;
    double total_weight() const { return total_weight_; }

private:
    void check_node(int u) const;

    int n_nodes_ = 0;
    double total_weight_ = 0.0;
    std::vector<WeightedEdge> edges_;
    std::vector<std::vector<std::pair<int, double>>> adj_; // index 0 unused
};

} // namespace qcbo

#endif // QCBO_GRAPH_HPP
