#include "qcbo/reconstruct.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "qcbo/qaoa.hpp"

namespace qcbo {

std::vector<ScoredConfig> top_candidates(std::span<const double> probabilities,
                                         int max_candidates) {
    if (max_candidates < 1) throw std::invalid_argument("top_candidates: need at least one");
    // Only the support is eligible; a narrow distribution yields fewer
    // than max_candidates entries.
    std::vector<std::size_t> order;
    order.reserve(probabilities.size());
    for (std::size_t c = 0; c < probabilities.size(); ++c) {
        if (probabilities[c] > 0.0) order.push_back(c);
    }
    const auto keep = std::min(order.size(), static_cast<std::size_t>(max_candidates));
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          if (probabilities[a] != probabilities[b]) {
                              return probabilities[a] > probabilities[b];
                          }
                          return a < b;
                      });
    std::vector<ScoredConfig> result;
    result.reserve(keep);
    for (std::size_t r = 0; r < keep; ++r) {
        result.push_back({order[r], probabilities[order[r]]});
    }
    return result;
}

double objective_on_covered(const ProblemInstance& instance, const std::vector<int>& actions) {
    double profit = 0.0;
    for (int i = 1; i <= instance.n_loanees; ++i) {
        int a = actions[static_cast<std::size_t>(i)];
        if (a != 0) profit += instance.h_at(i, a);
    }
    double welfare = 0.0;
    for (const WeightedEdge& e : instance.assoc.edges()) {
        int au = actions[static_cast<std::size_t>(e.u)];
        int av = actions[static_cast<std::size_t>(e.v)];
        if (au > 1 && av > 1) welfare += e.weight;
    }
    return (1.0 - instance.epsilon) * profit + instance.epsilon * welfare;
}

std::optional<Candidate> combine(const Candidate& left, const Candidate& right,
                                 std::span<const int> shared_nodes) {
    for (int node : shared_nodes) {
        if (left.actions[static_cast<std::size_t>(node)] !=
            right.actions[static_cast<std::size_t>(node)]) {
            return std::nullopt;
        }
    }
    Candidate merged = left;
    for (std::size_t i = 1; i < right.actions.size(); ++i) {
        if (right.actions[i] != 0) merged.actions[i] = right.actions[i];
    }
    merged.probability = left.probability * right.probability;
    merged.score = 0.0;
    return merged;
}

namespace {

Candidate candidate_from_config(const std::vector<int>& members, std::size_t config_index,
                                double probability, int n_loanees, int n_actions) {
    Candidate cand;
    cand.actions.assign(static_cast<std::size_t>(n_loanees) + 1, 0);
    std::vector<int> actions =
        index_to_actions(config_index, static_cast<int>(members.size()), n_actions);
    for (std::size_t p = 0; p < members.size(); ++p) {
        cand.actions[static_cast<std::size_t>(members[p])] = actions[p];
    }
    cand.probability = probability;
    return cand;
}

/// Best-objective first; probability and lexicographic order break ties
/// deterministically.
bool candidate_less(const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.probability != b.probability) return a.probability > b.probability;
    return a.actions < b.actions;
}

} // namespace

ReconstructResult reconstruct(const std::vector<Group>& groups,
                              const std::vector<std::vector<double>>& distributions,
                              const ProblemInstance& instance, int max_candidates,
                              std::uint64_t /*seed*/) {
    if (groups.empty()) throw std::invalid_argument("reconstruct: no groups");
    if (groups.size() != distributions.size()) {
        throw std::invalid_argument("reconstruct: one distribution per group required");
    }
    if (max_candidates < 1) throw std::invalid_argument("reconstruct: max_candidates >= 1");

    // Merge order: descending member count, then smallest member id.
    std::vector<std::size_t> order(groups.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::vector<int>> member_sets(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) member_sets[g] = groups[g].members();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (member_sets[a].size() != member_sets[b].size()) {
            return member_sets[a].size() > member_sets[b].size();
        }
        return member_sets[a].front() < member_sets[b].front();
    });

    bool forced = false;
    std::vector<char> covered(static_cast<std::size_t>(instance.n_loanees) + 1, 0);

    // Seed the fold with the first group's most probable configurations.
    std::vector<Candidate> front;
    {
        const std::size_t g = order[0];
        for (const ScoredConfig& sc : top_candidates(distributions[g], max_candidates)) {
            Candidate cand = candidate_from_config(member_sets[g], sc.index, sc.probability,
                                                   instance.n_loanees, instance.n_actions);
            cand.score = objective_on_covered(instance, cand.actions);
            front.push_back(std::move(cand));
        }
        for (int node : member_sets[g]) covered[static_cast<std::size_t>(node)] = 1;
    }

    for (std::size_t step = 1; step < order.size(); ++step) {
        const std::size_t g = order[step];
        const auto& members = member_sets[g];
        std::vector<int> shared;
        for (int node : members) {
            if (covered[static_cast<std::size_t>(node)]) shared.push_back(node);
        }

        auto merge_with = [&](const Candidate& right, std::vector<Candidate>& into) {
            for (const Candidate& left : front) {
                if (auto m = combine(left, right, shared)) {
                    m->score = objective_on_covered(instance, m->actions);
                    into.push_back(std::move(*m));
                }
            }
        };

        std::vector<Candidate> merged;
        std::vector<ScoredConfig> top = top_candidates(distributions[g], max_candidates);
        for (const ScoredConfig& sc : top) {
            Candidate right = candidate_from_config(members, sc.index, sc.probability,
                                                    instance.n_loanees, instance.n_actions);
            merge_with(right, merged);
        }

        if (merged.empty()) {
            // No top pair is compatible: walk the rest of the group's
            // support in descending probability until something merges.
            std::vector<std::size_t> full(distributions[g].size());
            std::iota(full.begin(), full.end(), std::size_t{0});
            std::sort(full.begin(), full.end(), [&](std::size_t a, std::size_t b) {
                if (distributions[g][a] != distributions[g][b]) {
                    return distributions[g][a] > distributions[g][b];
                }
                return a < b;
            });
            for (std::size_t pos = top.size(); pos < full.size() && merged.empty(); ++pos) {
                Candidate right = candidate_from_config(members, full[pos],
                                                        distributions[g][full[pos]],
                                                        instance.n_loanees, instance.n_actions);
                merge_with(right, merged);
            }
        }

        if (merged.empty()) {
            // Unreachable when the full support was enumerated, but kept
            // as a bounded fallback: take the best halves and let the
            // left side win the shared nodes.
            forced = true;
            Candidate right = candidate_from_config(members, top.front().index,
                                                    top.front().probability, instance.n_loanees,
                                                    instance.n_actions);
            const Candidate& left = front.front();
            for (int node : shared) {
                right.actions[static_cast<std::size_t>(node)] =
                    left.actions[static_cast<std::size_t>(node)];
            }
            Candidate m = *combine(left, right, shared);
            m.score = objective_on_covered(instance, m.actions);
            merged.push_back(std::move(m));
        }

        std::sort(merged.begin(), merged.end(), candidate_less);
        if (merged.size() > static_cast<std::size_t>(max_candidates)) {
            merged.resize(static_cast<std::size_t>(max_candidates));
        }
        front = std::move(merged);
        for (int node : members) covered[static_cast<std::size_t>(node)] = 1;
    }

    const Candidate& best = front.front();
    std::vector<int> actions;
    actions.reserve(static_cast<std::size_t>(instance.n_loanees));
    for (int i = 1; i <= instance.n_loanees; ++i) {
        int a = best.actions[static_cast<std::size_t>(i)];
        if (a == 0) {
            throw std::logic_error("reconstruct: loanee " + std::to_string(i) + " not covered");
        }
        actions.push_back(a);
    }
    return {ActionAssignment(std::move(actions), instance.n_actions), forced};
}

} // namespace qcbo
