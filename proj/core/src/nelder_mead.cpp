#include "qcbo/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcbo {

MinimizeResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                           std::span<const double> start, double initial_step,
                           int max_evaluations, double tolerance) {
    const std::size_t dim = start.size();
    if (dim == 0) throw std::invalid_argument("nelder_mead: empty parameter vector");
    if (max_evaluations < 1) throw std::invalid_argument("nelder_mead: budget must be >= 1");

    // Standard coefficients: reflection, expansion, contraction, shrink.
    constexpr double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    MinimizeResult result;
    result.x.assign(start.begin(), start.end());

    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        double v = objective(x);
        if (v < result.value || evals == 1) {
            result.value = v;
            result.x = x;
        }
        return v;
    };

    std::vector<std::vector<double>> simplex(dim + 1, std::vector<double>(start.begin(), start.end()));
    std::vector<double> values(dim + 1);
    for (std::size_t i = 1; i <= dim; ++i) simplex[i][i - 1] += initial_step;
    for (std::size_t i = 0; i <= dim && evals < max_evaluations; ++i) values[i] = eval(simplex[i]);

    std::vector<std::size_t> rank(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    while (evals < max_evaluations) {
        std::iota(rank.begin(), rank.end(), std::size_t{0});
        std::sort(rank.begin(), rank.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = rank.front(), worst = rank.back();
        if (std::abs(values[worst] - values[best]) <= tolerance) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t r = 0; r + 1 <= dim; ++r) {
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[rank[r]][d];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        for (std::size_t d = 0; d < dim; ++d) {
            trial[d] = centroid[d] + alpha * (centroid[d] - simplex[worst][d]);
        }
        double reflected = eval(trial);

        if (reflected < values[rank[0]]) {
            // Try to expand past the reflected point.
            for (std::size_t d = 0; d < dim; ++d) {
                trial2[d] = centroid[d] + gamma * (trial[d] - centroid[d]);
            }
            double expanded = evals < max_evaluations ? eval(trial2) : reflected + 1.0;
            if (expanded < reflected) {
                simplex[worst] = trial2;
                values[worst] = expanded;
            } else {
                simplex[worst] = trial;
                values[worst] = reflected;
            }
        } else if (reflected < values[rank[dim - 1]]) {
            simplex[worst] = trial;
            values[worst] = reflected;
        } else {
            // Contract toward the better of (worst, reflected).
            const bool outside = reflected < values[worst];
            const std::vector<double>& base = outside ? trial : simplex[worst];
            for (std::size_t d = 0; d < dim; ++d) {
                trial2[d] = centroid[d] + rho * (base[d] - centroid[d]);
            }
            double contracted = evals < max_evaluations ? eval(trial2) : reflected + 1.0;
            if (contracted < std::min(reflected, values[worst])) {
                simplex[worst] = trial2;
                values[worst] = contracted;
            } else {
                // Shrink everything toward the best vertex.
                for (std::size_t i = 0; i <= dim; ++i) {
                    if (i == best) continue;
                    for (std::size_t d = 0; d < dim; ++d) {
                        simplex[i][d] = simplex[best][d] + sigma * (simplex[i][d] - simplex[best][d]);
                    }
                    if (evals >= max_evaluations) break;
                    values[i] = eval(simplex[i]);
                }
            }
        }
    }
    result.evaluations = evals;
    return result;
}

} // namespace qcbo
