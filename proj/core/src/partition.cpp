#include "qcbo/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qcbo/rng.hpp"

namespace qcbo {

std::vector<int> Group::members() const {
    std::vector<int> all = core;
    all.insert(all.end(), edge_nodes.begin(), edge_nodes.end());
    std::sort(all.begin(), all.end());
    return all;
}

bool Group::contains(int node) const {
    return std::binary_search(core.begin(), core.end(), node) ||
           std::find(edge_nodes.begin(), edge_nodes.end(), node) != edge_nodes.end();
}

double modularity(const AssocGraph& graph, const std::vector<std::vector<int>>& communities) {
    const double m = graph.total_weight();
    if (!(m > 0.0)) return 0.0;
    double q = 0.0;
    for (const auto& comm : communities) {
        std::set<int> members(comm.begin(), comm.end());
        double internal = 0.0;
        double degree_sum = 0.0;
        for (int u : comm) {
            degree_sum += graph.weighted_degree(u);
            for (const auto& [v, w] : graph.neighbors(u)) {
                if (u < v && members.count(v)) internal += w;
            }
        }
        double a = degree_sum / (2.0 * m);
        q += internal / m - a * a;
    }
    return q;
}

namespace {

constexpr double kGainTolerance = 1e-12;

std::vector<std::vector<int>> sorted_communities(std::vector<std::vector<int>> communities) {
    for (auto& c : communities) std::sort(c.begin(), c.end());
    std::sort(communities.begin(), communities.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return communities;
}

} // namespace

std::vector<std::vector<int>> greedy_modularity(const AssocGraph& graph) {
    const int n = graph.n_nodes();
    std::vector<std::vector<int>> singletons;
    singletons.reserve(static_cast<std::size_t>(n));
    for (int u = 1; u <= n; ++u) singletons.push_back({u});
    const double m = graph.total_weight();
    if (!(m > 0.0)) return singletons;

    struct Community {
        bool alive = true;
        int min_node = 0;
        double a = 0.0; // degree fraction K_c / (2m)
        std::vector<int> nodes;
        std::map<int, double> between; // alive neighbor community -> edge weight
    };
    std::vector<Community> comms(static_cast<std::size_t>(n));
    for (int u = 1; u <= n; ++u) {
        auto& c = comms[static_cast<std::size_t>(u - 1)];
        c.min_node = u;
        c.nodes = {u};
        c.a = graph.weighted_degree(u) / (2.0 * m);
    }
    for (const WeightedEdge& e : graph.edges()) {
        comms[static_cast<std::size_t>(e.u - 1)].between[e.v - 1] += e.weight;
        comms[static_cast<std::size_t>(e.v - 1)].between[e.u - 1] += e.weight;
    }

    while (true) {
        double best_gain = kGainTolerance;
        int best_a = -1, best_b = -1;
        for (int ca = 0; ca < n; ++ca) {
            const auto& a = comms[static_cast<std::size_t>(ca)];
            if (!a.alive) continue;
            for (const auto& [cb, w] : a.between) {
                const auto& b = comms[static_cast<std::size_t>(cb)];
                if (!b.alive || b.min_node <= a.min_node) continue;
                double gain = w / m - 2.0 * a.a * b.a;
                bool better = gain > best_gain;
                if (!better && best_a >= 0 && gain == best_gain) {
                    auto key = std::pair(a.min_node, b.min_node);
                    auto best_key = std::pair(comms[static_cast<std::size_t>(best_a)].min_node,
                                              comms[static_cast<std::size_t>(best_b)].min_node);
                    better = key < best_key;
                }
                if (better) {
                    best_gain = gain;
                    best_a = ca;
                    best_b = cb;
                }
            }
        }
        if (best_a < 0) break;

        // Merge best_b into best_a (best_a holds the smaller min node).
        auto& keep = comms[static_cast<std::size_t>(best_a)];
        auto& gone = comms[static_cast<std::size_t>(best_b)];
        keep.a += gone.a;
        keep.nodes.insert(keep.nodes.end(), gone.nodes.begin(), gone.nodes.end());
        keep.between.erase(best_b);
        for (const auto& [cc, w] : gone.between) {
            if (cc == best_a) continue;
            keep.between[cc] += w;
            auto& other = comms[static_cast<std::size_t>(cc)];
            other.between.erase(best_b);
            other.between[best_a] += w;
        }
        gone.alive = false;
        gone.between.clear();
    }

    std::vector<std::vector<int>> result;
    for (auto& c : comms) {
        if (c.alive) result.push_back(std::move(c.nodes));
    }
    return sorted_communities(std::move(result));
}

namespace {

/// Compact 0-based graph used internally by Louvain; allows self-loops
/// that appear when communities are aggregated.
struct LevelGraph {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> adj; // no self entries
    std::vector<double> self_loop;                        // internal weight
    double m = 0.0;                                       // total weight incl. self-loops

    double degree(int u) const {
        double k = 2.0 * self_loop[static_cast<std::size_t>(u)];
        for (const auto& [_, w] : adj[static_cast<std::size_t>(u)]) k += w;
        return k;
    }
};

struct LouvainState {
    LevelGraph graph;
    std::vector<std::vector<int>> node_contents; // original 1-based ids per level node
};

LouvainState induced_level_graph(const AssocGraph& graph, const std::vector<int>& nodes) {
    LouvainState state;
    std::map<int, int> index;
    for (int u : nodes) {
        index.emplace(u, static_cast<int>(index.size()));
    }
    state.graph.n = static_cast<int>(index.size());
    state.graph.adj.resize(static_cast<std::size_t>(state.graph.n));
    state.graph.self_loop.assign(static_cast<std::size_t>(state.graph.n), 0.0);
    state.node_contents.resize(static_cast<std::size_t>(state.graph.n));
    for (const auto& [orig, idx] : index) {
        state.node_contents[static_cast<std::size_t>(idx)] = {orig};
    }
    for (const auto& [orig, idx] : index) {
        for (const auto& [v, w] : graph.neighbors(orig)) {
            auto it = index.find(v);
            if (it == index.end() || it->second <= idx) continue;
            state.graph.adj[static_cast<std::size_t>(idx)].push_back({it->second, w});
            state.graph.adj[static_cast<std::size_t>(it->second)].push_back({idx, w});
            state.graph.m += w;
        }
    }
    return state;
}

/// One Louvain level: local moves in seeded sweep order. Returns the
/// community label per node (labels are arbitrary ints) and whether any
/// move was accepted.
bool local_moves(const LevelGraph& g, Rng& rng, std::vector<int>& community) {
    const int n = g.n;
    community.resize(static_cast<std::size_t>(n));
    std::iota(community.begin(), community.end(), 0);
    if (!(g.m > 0.0)) return false;

    std::vector<double> comm_degree(static_cast<std::size_t>(n));
    std::vector<double> node_degree(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
        node_degree[static_cast<std::size_t>(u)] = g.degree(u);
        comm_degree[static_cast<std::size_t>(u)] = node_degree[static_cast<std::size_t>(u)];
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    bool any_move = false;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int u : order) {
            const int old_comm = community[static_cast<std::size_t>(u)];
            const double k_u = node_degree[static_cast<std::size_t>(u)];

            // Weight from u to each neighboring community.
            std::map<int, double> links;
            for (const auto& [v, w] : g.adj[static_cast<std::size_t>(u)]) {
                links[community[static_cast<std::size_t>(v)]] += w;
            }
            const double k_u_old = links.count(old_comm) ? links[old_comm] : 0.0;
            const double m = g.m;
            const double removal =
                -(k_u_old / m - (comm_degree[static_cast<std::size_t>(old_comm)] - k_u) * k_u /
                                    (2.0 * m * m));

            int best_comm = old_comm;
            double best_gain = kGainTolerance; // a move must strictly improve
            for (const auto& [c, k_u_c] : links) {
                if (c == old_comm) continue;
                double gain = removal + k_u_c / m -
                              comm_degree[static_cast<std::size_t>(c)] * k_u / (2.0 * m * m);
                if (gain > best_gain ||
                    (best_comm != old_comm && gain == best_gain && c < best_comm)) {
                    best_gain = gain;
                    best_comm = c;
                }
            }
            if (best_comm != old_comm) {
                comm_degree[static_cast<std::size_t>(old_comm)] -= k_u;
                comm_degree[static_cast<std::size_t>(best_comm)] += k_u;
                community[static_cast<std::size_t>(u)] = best_comm;
                moved = true;
                any_move = true;
            }
        }
    }
    return any_move;
}

void aggregate(LouvainState& state, const std::vector<int>& community) {
    // Relabel communities by their smallest node index for determinism.
    std::map<int, std::vector<int>> grouped;
    for (int u = 0; u < state.graph.n; ++u) {
        grouped[community[static_cast<std::size_t>(u)]].push_back(u);
    }
    std::vector<std::vector<int>> groups;
    groups.reserve(grouped.size());
    for (auto& [_, nodes] : grouped) groups.push_back(std::move(nodes));
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    const int next_n = static_cast<int>(groups.size());
    std::vector<int> new_index(static_cast<std::size_t>(state.graph.n));
    for (int c = 0; c < next_n; ++c) {
        for (int u : groups[static_cast<std::size_t>(c)]) {
            new_index[static_cast<std::size_t>(u)] = c;
        }
    }

    LevelGraph next;
    next.n = next_n;
    next.adj.resize(static_cast<std::size_t>(next_n));
    next.self_loop.assign(static_cast<std::size_t>(next_n), 0.0);
    next.m = state.graph.m;
    std::vector<std::vector<int>> next_contents(static_cast<std::size_t>(next_n));

    std::map<std::pair<int, int>, double> between;
    for (int u = 0; u < state.graph.n; ++u) {
        const int cu = new_index[static_cast<std::size_t>(u)];
        next.self_loop[static_cast<std::size_t>(cu)] +=
            state.graph.self_loop[static_cast<std::size_t>(u)];
        auto& contents = next_contents[static_cast<std::size_t>(cu)];
        contents.insert(contents.end(), state.node_contents[static_cast<std::size_t>(u)].begin(),
                        state.node_contents[static_cast<std::size_t>(u)].end());
        for (const auto& [v, w] : state.graph.adj[static_cast<std::size_t>(u)]) {
            if (v < u) continue;
            const int cv = new_index[static_cast<std::size_t>(v)];
            if (cu == cv) {
                next.self_loop[static_cast<std::size_t>(cu)] += w;
            } else {
                between[{std::min(cu, cv), std::max(cu, cv)}] += w;
            }
        }
    }
    for (const auto& [key, w] : between) {
        next.adj[static_cast<std::size_t>(key.first)].push_back({key.second, w});
        next.adj[static_cast<std::size_t>(key.second)].push_back({key.first, w});
    }
    state.graph = std::move(next);
    state.node_contents = std::move(next_contents);
}

std::vector<std::vector<int>> louvain_on_nodes(const AssocGraph& graph,
                                               const std::vector<int>& nodes,
                                               std::uint64_t seed) {
    LouvainState state = induced_level_graph(graph, nodes);
    Rng rng(seed);
    while (true) {
        std::vector<int> community;
        bool improved = local_moves(state.graph, rng, community);
        if (!improved) break;
        int before = state.graph.n;
        aggregate(state, community);
        if (state.graph.n == before) break;
    }
    return sorted_communities(std::move(state.node_contents));
}

} // namespace

std::vector<std::vector<int>> louvain(const AssocGraph& graph, std::uint64_t seed) {
    std::vector<int> nodes(static_cast<std::size_t>(graph.n_nodes()));
    std::iota(nodes.begin(), nodes.end(), 1);
    return louvain_on_nodes(graph, nodes, seed);
}

Group add_edge_nodes(const Group& group, const AssocGraph& graph) {
    if (group.core.empty()) throw std::invalid_argument("add_edge_nodes: empty core");
    Group out = group;
    std::set<int> present(group.core.begin(), group.core.end());
    present.insert(group.edge_nodes.begin(), group.edge_nodes.end());
    // Members in ascending order, neighbors in ascending order: the
    // append order is deterministic.
    std::vector<int> scan(present.begin(), present.end());
    for (int u : scan) {
        for (const auto& [v, _] : graph.neighbors(u)) {
            if (!present.count(v)) {
                present.insert(v);
                out.edge_nodes.push_back(v);
            }
        }
    }
    return out;
}

namespace {

std::vector<int> outside_neighbors(const AssocGraph& graph, const std::vector<int>& nodes) {
    std::set<int> inside(nodes.begin(), nodes.end());
    std::set<int> found;
    for (int u : nodes) {
        for (const auto& [v, _] : graph.neighbors(u)) {
            if (!inside.count(v)) found.insert(v);
        }
    }
    return {found.begin(), found.end()};
}

/// Orders edge-node candidates so each is adjacent to a member placed
/// earlier; candidates unreachable from the core are dropped.
std::vector<int> order_edge_nodes(const std::vector<int>& core, std::vector<int> candidates,
                                  const AssocGraph& graph) {
    std::sort(candidates.begin(), candidates.end());
    std::set<int> placed(core.begin(), core.end());
    std::vector<int> ordered;
    bool progress = true;
    while (progress && ordered.size() < candidates.size()) {
        progress = false;
        for (int c : candidates) {
            if (placed.count(c)) continue;
            bool linked = false;
            for (const auto& [v, _] : graph.neighbors(c)) {
                if (placed.count(v)) {
                    linked = true;
                    break;
                }
            }
            if (linked) {
                placed.insert(c);
                ordered.push_back(c);
                progress = true;
            }
        }
    }
    return ordered;
}

struct Divider {
    const AssocGraph& graph;
    int max_size;
    std::uint64_t seed;
    std::uint64_t louvain_counter = 0;
    std::vector<Group> out;

    /// Fallback for sets the Louvain/augmentation loop cannot shrink:
    /// chunk the owned nodes by sorted id and cap each chunk's edge
    /// nodes by association weight.
    void chunk_fallback(const std::vector<int>& owned) {
        const int chunk_size = max_size - 1;
        for (std::size_t start = 0; start < owned.size();
             start += static_cast<std::size_t>(chunk_size)) {
            std::vector<int> chunk(owned.begin() + static_cast<std::ptrdiff_t>(start),
                                   owned.begin() + static_cast<std::ptrdiff_t>(std::min(
                                                       owned.size(),
                                                       start + static_cast<std::size_t>(chunk_size))));
            std::vector<int> candidates = outside_neighbors(graph, chunk);
            std::vector<std::pair<double, int>> ranked;
            ranked.reserve(candidates.size());
            for (int c : candidates) {
                double w = 0.0;
                for (int u : chunk) w += graph.weight(std::min(c, u), std::max(c, u));
                ranked.push_back({-w, c});
            }
            std::sort(ranked.begin(), ranked.end());
            const std::size_t budget = static_cast<std::size_t>(max_size) - chunk.size();
            std::vector<int> kept;
            for (std::size_t k = 0; k < ranked.size() && k < budget; ++k) {
                kept.push_back(ranked[k].second);
            }
            out.push_back(Group{chunk, kept});
        }
    }

    void emit_leaf(std::vector<int> owned, const std::vector<int>& member_set) {
        std::vector<int> candidates;
        std::set<int> core_set(owned.begin(), owned.end());
        for (int v : member_set) {
            if (!core_set.count(v)) candidates.push_back(v);
        }
        std::vector<int> ordered = order_edge_nodes(owned, std::move(candidates), graph);
        out.push_back(Group{std::move(owned), std::move(ordered)});
    }

    void recurse(const std::vector<int>& owned, const std::vector<int>& work_set) {
        auto pieces = louvain_on_nodes(graph, work_set,
                                       substream_seed(seed, "partition.louvain", louvain_counter++));
        std::set<int> owned_set(owned.begin(), owned.end());
        for (const auto& piece : pieces) {
            std::vector<int> piece_owned;
            for (int u : piece) {
                if (owned_set.count(u)) piece_owned.push_back(u);
            }
            if (piece_owned.empty()) continue; // owned by another branch

            std::vector<int> fresh = outside_neighbors(graph, piece);
            std::vector<int> member_set = piece;
            member_set.insert(member_set.end(), fresh.begin(), fresh.end());
            std::sort(member_set.begin(), member_set.end());

            if (member_set.size() <= static_cast<std::size_t>(max_size)) {
                emit_leaf(std::move(piece_owned), member_set);
            } else if (member_set.size() >= work_set.size()) {
                // Augmentation undid the split; recursing would not
                // terminate, so chunk the owned nodes instead.
                chunk_fallback(piece_owned);
            } else {
                recurse(piece_owned, member_set);
            }
        }
    }
};

} // namespace

std::vector<Group> divide(const ProblemInstance& instance, int max_group_size,
                          std::uint64_t seed) {
    if (max_group_size < 2) throw std::invalid_argument("divide: max group size must be >= 2");
    Divider divider{instance.assoc, max_group_size, seed, 0, {}};
    for (const auto& community : greedy_modularity(instance.assoc)) {
        divider.recurse(community, community);
    }
    std::sort(divider.out.begin(), divider.out.end(),
              [](const Group& a, const Group& b) { return a.core.front() < b.core.front(); });
    return divider.out;
}

} // namespace qcbo
