#ifndef QCBO_DATAGEN_HPP
#define QCBO_DATAGEN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcbo/problem.hpp"

namespace qcbo {

/// Synthetic-instance generator configuration. Profit rows follow a
/// log-ratio profile whose shape is set by a Poisson draw per loanee;
/// the association network is Erdos-Renyi with the given mean degree;
/// provisions are log-uniform.
struct GenConfig {
    int n_loanees = 600;
    int n_actions = 5;
    double poisson_mean = 0.7;
    double mean_degree = 2.0;
    std::uint64_t seed = 0;
    double assoc_weight_low = 0.0; // weights drawn from (low, high]
    double assoc_weight_high = 0.7;
    double provision_low = 1e-5; // log-uniform over (low, high]
    double provision_high = 1.0;

    void validate() const;
};

/// Profit matrix: row i equals the normalized profile
/// P(i,j) = (log10(j+2) - (1 - r_i) log10(j+1)) / C with r_i ~ Poisson.
/// Rows sum to exactly 1 up to rounding; all entries are non-negative.
std::vector<double> gen_h(const GenConfig& config);

/// G(N, p) association graph with p = mean_degree / (N - 1); realized
/// edges get independent weights uniform in (low, high].
AssocGraph gen_assoc(const GenConfig& config);

/// Provision matrix with entries log-uniform over (low, high].
std::vector<double> gen_provisions(const GenConfig& config);

/// Full instance from one seed. Same seed, same instance, bit for bit.
ProblemInstance generate_instance(const GenConfig& config, double epsilon = 0.5,
                                  std::optional<double> provision_cap = {});

/// Writes the JSON instance file with the generator settings recorded
/// under a "provenance" key.
void write_instance_file(const GenConfig& config, double epsilon,
                         std::optional<double> provision_cap, const std::string& path);

} // namespace qcbo

#endif // QCBO_DATAGEN_HPP
