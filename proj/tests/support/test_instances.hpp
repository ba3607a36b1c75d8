// Shared instance builders for unit and acceptance tests.
#ifndef QCBO_TEST_INSTANCES_HPP
#define QCBO_TEST_INSTANCES_HPP

#include <vector>

#include "qcbo/graph.hpp"
#include "qcbo/problem.hpp"
#include "qcbo/rng.hpp"

namespace qcbo::testing {

/// Small instance with dense random h in [0,1), l in [0,1), and an ER
/// association graph; all values flow from the seed.
inline ProblemInstance random_instance(int n_loanees, int n_actions, double epsilon,
                                       std::uint64_t seed, double edge_probability = 0.35) {
    Rng rng(substream_seed(seed, "test.instance"));
    ProblemInstance inst;
    inst.n_loanees = n_loanees;
    inst.n_actions = n_actions;
    inst.epsilon = epsilon;
    const auto cells = static_cast<std::size_t>(n_loanees) * n_actions;
    inst.h.resize(cells);
    inst.l.resize(cells);
    for (auto& v : inst.h) v = rng.next_double();
    for (auto& v : inst.l) v = rng.next_double();
    inst.assoc = AssocGraph(n_loanees);
    for (int u = 1; u <= n_loanees; ++u) {
        for (int v = u + 1; v <= n_loanees; ++v) {
            if (rng.next_double() < edge_probability) {
                inst.assoc.add_edge(u, v, rng.uniform_left_open(0.0, 0.7));
            }
        }
    }
    inst.validate();
    return inst;
}

/// Two-loanee instance matching the worked objective/provision examples:
/// h = [[1,2],[3,4]], l = [[0.1,0.2],[0.3,0.4]], one edge 1-2 with A = 2.
inline ProblemInstance two_loanee_instance(double epsilon) {
    ProblemInstance inst;
    inst.n_loanees = 2;
    inst.n_actions = 2;
    inst.h = {1.0, 2.0, 3.0, 4.0};
    inst.l = {0.1, 0.2, 0.3, 0.4};
    inst.assoc = AssocGraph(2);
    inst.assoc.add_edge(1, 2, 2.0);
    inst.epsilon = epsilon;
    inst.validate();
    return inst;
}

/// Eleven-node association topology shaped like the schematic example:
/// a 5-clique {1..5}, triangles {6,7,9} and {8,10,11}, and weak bridges
/// 5-6, 5-7, 4-9, 8-9, 7-11. The clusters {1..5} and {8,10,11} see
/// exactly {6,7,9} and {7,9} as outside neighbors.
inline AssocGraph schematic_graph() {
    AssocGraph g(11);
    const double intra = 1.0;
    const double bridge = 0.3;
    for (int u = 1; u <= 5; ++u) {
        for (int v = u + 1; v <= 5; ++v) g.add_edge(u, v, intra);
    }
    g.add_edge(6, 7, intra);
    g.add_edge(6, 9, intra);
    g.add_edge(7, 9, intra);
    g.add_edge(8, 10, intra);
    g.add_edge(8, 11, intra);
    g.add_edge(10, 11, intra);
    g.add_edge(5, 6, bridge);
    g.add_edge(5, 7, bridge);
    g.add_edge(4, 9, bridge);
    g.add_edge(8, 9, bridge);
    g.add_edge(7, 11, bridge);
    return g;
}

/// Wraps a bare graph into an instance with flat profit/provision rows
/// so partition-level tests can reuse pipeline entry points.
inline ProblemInstance instance_for_graph(const AssocGraph& graph, int n_actions = 2,
                                          double epsilon = 0.5) {
    ProblemInstance inst;
    inst.n_loanees = graph.n_nodes();
    inst.n_actions = n_actions;
    inst.h.assign(static_cast<std::size_t>(inst.n_loanees) * n_actions, 0.0);
    inst.l.assign(static_cast<std::size_t>(inst.n_loanees) * n_actions, 0.0);
    inst.assoc = graph;
    inst.epsilon = epsilon;
    inst.validate();
    return inst;
}

} // namespace qcbo::testing

#endif // QCBO_TEST_INSTANCES_HPP
