#include <doctest.h>

#include <algorithm>
#include <vector>

#include "qcbo/oracle.hpp"
#include "qcbo/qaoa.hpp"
#include "qcbo/reconstruct.hpp"
#include "test_instances.hpp"

using namespace qcbo;
using qcbo::testing::random_instance;

namespace {

Candidate candidate_over(const std::vector<int>& nodes, const std::vector<int>& actions,
                         int n_loanees, double probability) {
    Candidate c;
    c.actions.assign(static_cast<std::size_t>(n_loanees) + 1, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        c.actions[static_cast<std::size_t>(nodes[i])] = actions[i];
    }
    c.probability = probability;
    return c;
}

} // namespace

TEST_CASE("top_candidates ranks by probability with index tie-break") {
    // A point mass has support 1: fewer candidates than requested.
    std::vector<double> point{0.0, 0.0, 1.0, 0.0};
    auto top = top_candidates(point, 3);
    REQUIRE(top.size() == 1);
    CHECK(top[0].index == 2);

    std::vector<double> uniform{0.25, 0.25, 0.25, 0.25};
    auto two = top_candidates(uniform, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].index == 0);
    CHECK(two[1].index == 1);

    std::vector<double> sorted{0.5, 0.3, 0.2};
    auto pair = top_candidates(sorted, 2);
    CHECK(pair[0].index == 0);
    CHECK(pair[1].index == 1);
}

TEST_CASE("combine merges the schematic candidates from the worked example") {
    // Left group covers loanees 1..7 and 9; right group covers 7..11.
    const int n = 11;
    Candidate left = candidate_over({1, 2, 3, 4, 5, 6, 7, 9}, {2, 4, 3, 1, 5, 1, 1, 2}, n, 0.5);
    Candidate right = candidate_over({7, 8, 9, 10, 11}, {1, 3, 2, 3, 4}, n, 0.25);
    std::vector<int> shared{7, 9};

    auto merged = combine(left, right, shared);
    REQUIRE(merged.has_value());
    std::vector<int> expected{2, 4, 3, 1, 5, 1, 1, 3, 2, 3, 4};
    for (int i = 1; i <= n; ++i) {
        CHECK(merged->actions[static_cast<std::size_t>(i)] ==
              expected[static_cast<std::size_t>(i - 1)]);
    }
    CHECK(merged->probability == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("combine with no shared nodes always concatenates") {
    Candidate a = candidate_over({1, 2}, {1, 2}, 4, 0.9);
    Candidate b = candidate_over({3, 4}, {2, 1}, 4, 0.8);
    auto merged = combine(a, b, {});
    REQUIRE(merged.has_value());
    CHECK(merged->actions == std::vector<int>{0, 1, 2, 2, 1});
}

TEST_CASE("combine signals incompatibility on a disagreeing shared node") {
    Candidate a = candidate_over({1, 2}, {1, 2}, 3, 1.0);
    Candidate b = candidate_over({2, 3}, {2, 2}, 3, 1.0);
    std::vector<int> shared{2};
    CHECK(combine(a, b, shared).has_value());
    Candidate c = candidate_over({2, 3}, {1, 2}, 3, 1.0);
    CHECK_FALSE(combine(a, c, shared).has_value());
}

TEST_CASE("single group reconstruction decodes the most probable configuration") {
    ProblemInstance inst = random_instance(2, 2, 0.0, 12);
    Group group{{1, 2}, {}};
    std::vector<double> p{0.05, 0.7, 0.2, 0.05}; // index 1 -> actions (1,2)
    ReconstructResult res = reconstruct({group}, {p}, inst, 3, 0);
    CHECK(res.assignment.actions() == std::vector<int>{1, 2});
    CHECK_FALSE(res.forced_merge);
}

TEST_CASE("two disjoint point-mass groups concatenate their top candidates") {
    ProblemInstance inst = random_instance(4, 2, 0.0, 13, 0.0);
    Group g1{{1, 2}, {}};
    Group g2{{3, 4}, {}};
    std::vector<double> p1(4, 0.0);
    std::vector<double> p2(4, 0.0);
    p1[actions_to_index(std::vector<int>{2, 1}, 2)] = 1.0;
    p2[actions_to_index(std::vector<int>{1, 2}, 2)] = 1.0;
    ReconstructResult res = reconstruct({g1, g2}, {p1, p2}, inst, 5, 0);
    CHECK(res.assignment.actions() == std::vector<int>{2, 1, 1, 2});
}

TEST_CASE("overlapping groups pick the best-objective compatible pair") {
    // Three loanees; groups {1,2} and {2,3} share loanee 2. Enumerate
    // all compatible top-candidate pairs by brute force and compare.
    ProblemInstance inst = random_instance(3, 2, 0.5, 14, 0.9);
    Group g1{{1, 2}, {}};
    Group g2{{2, 3}, {}}; // sorted members: {2,3}
    std::vector<double> p1{0.4, 0.3, 0.2, 0.1};
    std::vector<double> p2{0.1, 0.2, 0.3, 0.4};
    const int lambda = 4;

    ReconstructResult res = reconstruct({g1, g2}, {p1, p2}, inst, lambda, 0);

    double best = -1e300;
    std::vector<int> best_actions;
    for (std::size_t c1 = 0; c1 < 4; ++c1) {
        auto a1 = index_to_actions(c1, 2, 2);
        for (std::size_t c2 = 0; c2 < 4; ++c2) {
            auto a2 = index_to_actions(c2, 2, 2);
            if (a1[1] != a2[0]) continue; // loanee 2 must agree
            std::vector<int> full{a1[0], a1[1], a2[1]};
            double y = objective(inst, ActionAssignment(full, 2));
            if (y > best) {
                best = y;
                best_actions = full;
            }
        }
    }
    CHECK(res.assignment.actions() == best_actions);
    CHECK(objective(inst, res.assignment) == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("incompatible top lists fall back to descending-probability enumeration") {
    // lambda = 1 with clashing point masses on the shared node: the
    // right group's support must be walked past its top candidate.
    ProblemInstance inst = random_instance(3, 2, 0.0, 15, 0.0);
    Group g1{{1, 2}, {}};
    Group g2{{2, 3}, {}};
    std::vector<double> p1{1.0, 0.0, 0.0, 0.0};          // loanee2 takes action 1
    std::vector<double> p2{0.0, 0.0, 0.6, 0.4};          // top has loanee2 action 2
    ReconstructResult res = reconstruct({g1, g2}, {p1, p2}, inst, 1, 0);
    // Compatible configurations of g2 are indices 0 (1,1) and 1 (1,2);
    // both have probability 0, tie broken by index.
    CHECK(res.assignment.actions() == std::vector<int>{1, 1, 1});
    CHECK_FALSE(res.forced_merge);
}

TEST_CASE("reconstruction output satisfies one-hot everywhere") {
    ProblemInstance inst = random_instance(8, 3, 0.5, 16, 0.3);
    auto groups = divide(inst, 4, 7);
    std::vector<std::vector<double>> dists;
    for (const auto& g : groups) {
        std::size_t dim = subspace_dimension(static_cast<int>(g.members().size()), 3);
        std::vector<double> p(dim, 0.0);
        // Arbitrary normalized distribution.
        double total = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            p[c] = static_cast<double>((c * 2654435761u) % 97) + 1.0;
            total += p[c];
        }
        for (auto& v : p) v /= total;
        dists.push_back(std::move(p));
    }
    ReconstructResult res = reconstruct(groups, dists, inst, 6, 3);
    CHECK(res.assignment.size() == 8);
    // Constructing the ActionAssignment already enforces one action per
    // loanee; decode/encode round-trip confirms block one-hotness.
    CHECK(decode_bits(encode_bits(res.assignment, 3), 8, 3) == res.assignment);
}

TEST_CASE("reconstruction never exceeds the brute-force optimum") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        ProblemInstance inst = random_instance(6, 2, 0.5, 100 + seed, 0.4);
        auto groups = divide(inst, 4, seed);
        std::vector<std::vector<double>> dists;
        for (const auto& g : groups) {
            QaoaConfig config;
            config.max_evaluations = 40;
            config.restarts = 2;
            dists.push_back(
                optimize_group(inst, g, inst.epsilon, config, seed).probabilities);
        }
        ReconstructResult res = reconstruct(groups, dists, inst, 8, seed);
        OracleResult oracle = brute_force_best(inst);
        CHECK(objective(inst, res.assignment) <= oracle.objective + 1e-9);
    }
}
