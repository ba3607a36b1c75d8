#ifndef QCBO_NELDER_MEAD_HPP
#define QCBO_NELDER_MEAD_HPP

#include <functional>
#include <span>
#include <vector>

namespace qcbo {

struct MinimizeResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
};

/// Derivative-free local minimization (Nelder-Mead simplex) with a hard
/// budget on objective evaluations. Returns the best point seen even
/// when the budget runs out before the simplex collapses.
MinimizeResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                           std::span<const double> start, double initial_step, int max_evaluations,
                           double tolerance = 1e-10);

} // namespace qcbo

#endif // QCBO_NELDER_MEAD_HPP
