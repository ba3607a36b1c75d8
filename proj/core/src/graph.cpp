#include "qcbo/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qcbo {

AssocGraph::AssocGraph(int n_nodes) : n_nodes_(n_nodes) {
    if (n_nodes < 0) throw std::invalid_argument("AssocGraph: negative node count");
    adj_.resize(static_cast<std::size_t>(n_nodes) + 1);
}

void AssocGraph::check_node(int u) const {
    if (u < 1 || u > n_nodes_) {
        throw std::out_of_range("AssocGraph: node id " + std::to_string(u) + " out of range 1.." +
                                std::to_string(n_nodes_));
    }
}

void AssocGraph::add_edge(int u, int v, double w) {
    check_node(u);
    check_node(v);
    if (u == v) throw std::invalid_argument("AssocGraph: self-loops are not allowed");
    if (!(w > 0.0)) throw std::invalid_argument("AssocGraph: edge weight must be positive");
    if (has_edge(u, v)) {
        throw std::invalid_argument("AssocGraph: duplicate edge {" + std::to_string(u) + "," +
                                    std::to_string(v) + "}");
    }
    if (u > v) std::swap(u, v);
    edges_.push_back({u, v, w});
    auto insert_sorted = [](std::vector<std::pair<int, double>>& list, int node, double weight) {
        auto it = std::lower_bound(list.begin(), list.end(), node,
                                   [](const auto& p, int n) { return p.first < n; });
        list.insert(it, {node, weight});
    };
    insert_sorted(adj_[static_cast<std::size_t>(u)], v, w);
    insert_sorted(adj_[static_cast<std::size_t>(v)], u, w);
    total_weight_ += w;
}

bool AssocGraph::has_edge(int u, int v) const {
    return weight(u, v) != 0.0;
}

double AssocGraph::weight(int u, int v) const {
    check_node(u);
    check_node(v);
    const auto& list = adj_[static_cast<std::size_t>(u)];
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const auto& p, int n) { return p.first < n; });
    if (it != list.end() && it->first == v) return it->second;
    return 0.0;
}

const std::vector<std::pair<int, double>>& AssocGraph::neighbors(int u) const {
    check_node(u);
    return adj_[static_cast<std::size_t>(u)];
}

double AssocGraph::weighted_degree(int u) const {
    double k = 0.0;
    for (const auto& [_, w] : neighbors(u)) k += w;
    return k;
}

} // namespace qcbo
