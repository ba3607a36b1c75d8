#ifndef QCBO_PROBLEM_HPP
#define QCBO_PROBLEM_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcbo/graph.hpp"

namespace qcbo {

/// Raised when a size or feasibility guard rejects a request (maps to
/// CLI exit code 2).
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A loan-collection optimization problem. Action index 1 is the
/// discounted-payoff (DPO) action by convention: taking it on loanee i
/// suppresses all of i's association terms in the objective.
struct ProblemInstance {
    int n_loanees = 0; // N
    int n_actions = 0; // M >= 2
    std::vector<double> h; // N*M expected net profit, row-major
    std::vector<double> l; // N*M provision, row-major, non-negative
    AssocGraph assoc;      // positive weights, no self-loops
    double epsilon = 0.0;  // [0, 1): profit vs. network-welfare trade-off
    std::optional<double> provision_cap; // absent => soft-constraint mode

    double h_at(int loanee, int action) const {
        return h[static_cast<std::size_t>(loanee - 1) * n_actions + (action - 1)];
    }
    double l_at(int loanee, int action) const {
        return l[static_cast<std::size_t>(loanee - 1) * n_actions + (action - 1)];
    }

    /// Copy with a different trade-off parameter; used by sweeps.
    ProblemInstance with_epsilon(double eps) const;

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

/// One action per loanee, indices 1..M. The one-action-per-loanee
/// constraint holds by construction.
class ActionAssignment {
public:
    ActionAssignment(std::vector<int> actions, int n_actions);

    int size() const { return static_cast<int>(actions_.size()); }
    int n_actions() const { return n_actions_; }

    /// Action taken on loanee i (1-based).
    int action(int loanee) const { return actions_[static_cast<std::size_t>(loanee - 1)]; }
    const std::vector<int>& actions() const { return actions_; }

    /// Copy with loanee's action replaced.
    ActionAssignment with_action(int loanee, int action) const;

    bool operator==(const ActionAssignment& other) const = default;

private:
    std::vector<int> actions_;
    int n_actions_;
};

/// Yield Y: (1-eps) * sum_ij h_ij x_ij + eps * sum_{edges} A_ii' (1-x_i1)(1-x_i'1).
/// Each undirected edge is counted exactly once.
double objective(const ProblemInstance& instance, const ActionAssignment& assignment);

/// Total loan-loss provision sum_i l_{i, a_i}.
double provision(const ProblemInstance& instance, const ActionAssignment& assignment);

/// Number of loanees assigned the DPO action (j = 1).
int dpo_count(const ActionAssignment& assignment);

/// Raw expected net profit sum_i h_{i, a_i}, without the (1-eps) factor.
double bank_profit(const ProblemInstance& instance, const ActionAssignment& assignment);

/// Loanee-major, action-minor bit-string: position (i-1)*M + (j-1) is '1'
/// iff loanee i takes action j.
std::string encode_bits(const ActionAssignment& assignment, int n_actions);

/// Inverse of encode_bits; rejects strings that are not one-hot per block.
ActionAssignment decode_bits(const std::string& bits, int n_loanees, int n_actions);

/// JSON instance file round-trip. Unknown keys (e.g. "provenance") are
/// preserved on load only insofar as they are ignored.
ProblemInstance load_instance(const std::string& path);
ProblemInstance parse_instance(const std::string& json_text);
void save_instance(const ProblemInstance& instance, const std::string& path);

} // namespace qcbo

#endif // QCBO_PROBLEM_HPP
