#include "qcbo/datagen.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "qcbo/rng.hpp"

namespace qcbo {

using nlohmann::json;

void GenConfig::validate() const {
    if (n_loanees < 2) throw std::invalid_argument("gen: n_loanees must be at least 2");
    if (n_actions < 2) throw std::invalid_argument("gen: n_actions must be at least 2");
    if (!(poisson_mean > 0.0)) throw std::invalid_argument("gen: poisson_mean must be positive");
    if (!(mean_degree >= 0.0)) throw std::invalid_argument("gen: mean_degree must be non-negative");
    if (!(assoc_weight_high > assoc_weight_low) || !(assoc_weight_high > 0.0)) {
        throw std::invalid_argument("gen: assoc weight range must be positive");
    }
    if (!(provision_low > 0.0) || !(provision_high > provision_low)) {
        throw std::invalid_argument("gen: provision range must satisfy 0 < low < high");
    }
}

std::vector<double> gen_h(const GenConfig& config) {
    config.validate();
    const int n = config.n_loanees;
    const int m = config.n_actions;
    std::vector<double> h(static_cast<std::size_t>(n) * m);
    for (int i = 0; i < n; ++i) {
        Rng rng = substream(config.seed, "h", static_cast<std::uint64_t>(i));
        int r = rng.poisson(config.poisson_mean);
        double norm = 0.0;
        for (int j = 1; j <= m; ++j) {
            double p = std::log10(j + 2.0) - (1.0 - r) * std::log10(j + 1.0);
            h[static_cast<std::size_t>(i) * m + (j - 1)] = p;
            norm += p;
        }
        for (int j = 0; j < m; ++j) {
            h[static_cast<std::size_t>(i) * m + j] /= norm;
        }
    }
    return h;
}

AssocGraph gen_assoc(const GenConfig& config) {
    config.validate();
    const int n = config.n_loanees;
    double p = config.mean_degree / (n - 1);
    if (p > 1.0) p = 1.0;
    AssocGraph graph(n);
    Rng rng = substream(config.seed, "assoc");
    for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) {
            if (rng.next_double() < p) {
                double w = rng.uniform_left_open(config.assoc_weight_low, config.assoc_weight_high);
                graph.add_edge(u, v, w);
            }
        }
    }
    return graph;
}

std::vector<double> gen_provisions(const GenConfig& config) {
    config.validate();
    const int n = config.n_loanees;
    const int m = config.n_actions;
    std::vector<double> l(static_cast<std::size_t>(n) * m);
    for (int i = 0; i < n; ++i) {
        Rng rng = substream(config.seed, "l", static_cast<std::uint64_t>(i));
        for (int j = 0; j < m; ++j) {
            l[static_cast<std::size_t>(i) * m + j] =
                rng.log_uniform(config.provision_low, config.provision_high);
        }
    }
    return l;
}

ProblemInstance generate_instance(const GenConfig& config, double epsilon,
                                  std::optional<double> provision_cap) {
    ProblemInstance instance;
    instance.n_loanees = config.n_loanees;
    instance.n_actions = config.n_actions;
    instance.h = gen_h(config);
    instance.l = gen_provisions(config);
    instance.assoc = gen_assoc(config);
    instance.epsilon = epsilon;
    instance.provision_cap = provision_cap;
    instance.validate();
    return instance;
}

void write_instance_file(const GenConfig& config, double epsilon,
                         std::optional<double> provision_cap, const std::string& path) {
    ProblemInstance instance = generate_instance(config, epsilon, provision_cap);

    double degree_sum = 0.0;
    for (int u = 1; u <= instance.n_loanees; ++u) {
        degree_sum += instance.assoc.degree(u);
    }

    json doc;
    doc["n_loanees"] = instance.n_loanees;
    doc["n_actions"] = instance.n_actions;
    doc["epsilon"] = instance.epsilon;
    doc["provision_cap"] = provision_cap ? json(*provision_cap) : json(nullptr);
    doc["h"] = instance.h;
    doc["l"] = instance.l;
    json assoc = json::array();
    for (const WeightedEdge& e : instance.assoc.edges()) {
        assoc.push_back({e.u, e.v, e.weight});
    }
    doc["assoc"] = assoc;
    doc["provenance"] = {
        {"generator", "qcbo-datagen"},
        {"n_loanees", config.n_loanees},
        {"n_actions", config.n_actions},
        {"poisson_mean", config.poisson_mean},
        {"mean_degree", config.mean_degree},
        {"seed", config.seed},
        {"assoc_weight_range", {config.assoc_weight_low, config.assoc_weight_high}},
        {"provision_range", {config.provision_low, config.provision_high}},
        {"realized_mean_degree", degree_sum / instance.n_loanees},
    };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << doc.dump(2) << '\n';
}

} // namespace qcbo
