#include "qcbo/problem.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qcbo {

using nlohmann::json;

ProblemInstance ProblemInstance::with_epsilon(double eps) const {
    ProblemInstance copy = *this;
    copy.epsilon = eps;
    copy.validate();
    return copy;
}

void ProblemInstance::validate() const {
    if (n_loanees < 1) throw std::invalid_argument("instance: n_loanees must be positive");
    if (n_actions < 2) throw std::invalid_argument("instance: n_actions must be at least 2");
    const auto expected = static_cast<std::size_t>(n_loanees) * n_actions;
    if (h.size() != expected) throw std::invalid_argument("instance: h has wrong size");
    if (l.size() != expected) throw std::invalid_argument("instance: l has wrong size");
    for (double v : l) {
        if (!(v >= 0.0)) throw std::invalid_argument("instance: provisions must be non-negative");
    }
    for (double v : h) {
        if (!std::isfinite(v)) throw std::invalid_argument("instance: h entries must be finite");
    }
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("instance: epsilon must lie in [0, 1)");
    }
    if (provision_cap && !(*provision_cap >= 0.0)) {
        throw std::invalid_argument("instance: provision cap must be non-negative");
    }
    if (assoc.n_nodes() != n_loanees) {
        throw std::invalid_argument("instance: association graph size differs from n_loanees");
    }
    // Self-loops, non-positive weights and duplicates are rejected by
    // AssocGraph at insertion time.
}

ActionAssignment::ActionAssignment(std::vector<int> actions, int n_actions)
    : actions_(std::move(actions)), n_actions_(n_actions) {
    if (n_actions_ < 2) throw std::invalid_argument("assignment: n_actions must be at least 2");
    for (int a : actions_) {
        if (a < 1 || a > n_actions_) {
            throw std::invalid_argument("assignment: action index out of range 1.." +
                                        std::to_string(n_actions_));
        }
    }
}

ActionAssignment ActionAssignment::with_action(int loanee, int action) const {
    std::vector<int> next = actions_;
    if (loanee < 1 || loanee > size()) throw std::out_of_range("assignment: loanee out of range");
    if (action < 1 || action > n_actions_) throw std::invalid_argument("assignment: bad action");
    next[static_cast<std::size_t>(loanee - 1)] = action;
    return ActionAssignment(std::move(next), n_actions_);
}

namespace {

void check_dims(const ProblemInstance& instance, const ActionAssignment& assignment) {
    if (assignment.size() != instance.n_loanees || assignment.n_actions() != instance.n_actions) {
        throw std::invalid_argument("assignment dimensions do not match instance");
    }
}

} // namespace

double objective(const ProblemInstance& instance, const ActionAssignment& assignment) {
    check_dims(instance, assignment);
    double profit = 0.0;
    for (int i = 1; i <= instance.n_loanees; ++i) {
        profit += instance.h_at(i, assignment.action(i));
    }
    double welfare = 0.0;
    for (const WeightedEdge& e : instance.assoc.edges()) {
        if (assignment.action(e.u) != 1 && assignment.action(e.v) != 1) {
            welfare += e.weight;
        }
    }
    return (1.0 - instance.epsilon) * profit + instance.epsilon * welfare;
}

double provision(const ProblemInstance& instance, const ActionAssignment& assignment) {
    check_dims(instance, assignment);
    double total = 0.0;
    for (int i = 1; i <= instance.n_loanees; ++i) {
        total += instance.l_at(i, assignment.action(i));
    }
    return total;
}

int dpo_count(const ActionAssignment& assignment) {
    int count = 0;
    for (int a : assignment.actions()) {
        if (a == 1) ++count;
    }
    return count;
}

double bank_profit(const ProblemInstance& instance, const ActionAssignment& assignment) {
    check_dims(instance, assignment);
    double total = 0.0;
    for (int i = 1; i <= instance.n_loanees; ++i) {
        total += instance.h_at(i, assignment.action(i));
    }
    return total;
}

std::string encode_bits(const ActionAssignment& assignment, int n_actions) {
    if (n_actions != assignment.n_actions()) {
        throw std::invalid_argument("encode_bits: n_actions mismatch");
    }
    std::string bits(static_cast<std::size_t>(assignment.size()) * n_actions, '0');
    for (int i = 1; i <= assignment.size(); ++i) {
        bits[static_cast<std::size_t>(i - 1) * n_actions + (assignment.action(i) - 1)] = '1';
    }
    return bits;
}

ActionAssignment decode_bits(const std::string& bits, int n_loanees, int n_actions) {
    if (bits.size() != static_cast<std::size_t>(n_loanees) * n_actions) {
        throw std::invalid_argument("decode_bits: bit-string length mismatch");
    }
    std::vector<int> actions(static_cast<std::size_t>(n_loanees), 0);
    for (int i = 0; i < n_loanees; ++i) {
        int hot = 0;
        int count = 0;
        for (int j = 0; j < n_actions; ++j) {
            char c = bits[static_cast<std::size_t>(i) * n_actions + j];
            if (c == '1') {
                hot = j + 1;
                ++count;
            } else if (c != '0') {
                throw std::invalid_argument("decode_bits: invalid character");
            }
        }
        if (count != 1) {
            throw std::invalid_argument("decode_bits: block for loanee " + std::to_string(i + 1) +
                                        " is not one-hot");
        }
        actions[static_cast<std::size_t>(i)] = hot;
    }
    return ActionAssignment(std::move(actions), n_actions);
}

ProblemInstance parse_instance(const std::string& json_text) {
    json doc = json::parse(json_text);
    ProblemInstance instance;
    instance.n_loanees = doc.at("n_loanees").get<int>();
    instance.n_actions = doc.at("n_actions").get<int>();
    instance.epsilon = doc.at("epsilon").get<double>();
    if (doc.contains("provision_cap") && !doc.at("provision_cap").is_null()) {
        instance.provision_cap = doc.at("provision_cap").get<double>();
    }
    instance.h = doc.at("h").get<std::vector<double>>();
    instance.l = doc.at("l").get<std::vector<double>>();
    instance.assoc = AssocGraph(instance.n_loanees);
    for (const auto& entry : doc.at("assoc")) {
        if (!entry.is_array() || entry.size() != 3) {
            throw std::invalid_argument("instance: assoc entries must be [i, i_prime, weight]");
        }
        instance.assoc.add_edge(entry[0].get<int>(), entry[1].get<int>(), entry[2].get<double>());
    }
    instance.validate();
    return instance;
}

ProblemInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

void save_instance(const ProblemInstance& instance, const std::string& path) {
    instance.validate();
    json doc;
    doc["n_loanees"] = instance.n_loanees;
    doc["n_actions"] = instance.n_actions;
    doc["epsilon"] = instance.epsilon;
    doc["provision_cap"] = instance.provision_cap ? json(*instance.provision_cap) : json(nullptr);
    doc["h"] = instance.h;
    doc["l"] = instance.l;
    json assoc = json::array();
    for (const WeightedEdge& e : instance.assoc.edges()) {
        assoc.push_back({e.u, e.v, e.weight});
    }
    doc["assoc"] = assoc;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << doc.dump(2) << '\n';
}

} // namespace qcbo
