#include "qcbo/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace qcbo {

OracleResult brute_force_best(const ProblemInstance& instance,
                              std::optional<double> provision_cap) {
    instance.validate();
    const int n = instance.n_loanees;
    const int m = instance.n_actions;
    double size = std::pow(static_cast<double>(m), n);
    if (size > 1e7) {
        throw GuardError("brute_force_best: M^N exceeds the 10^7 enumeration guard");
    }
    const std::size_t total = static_cast<std::size_t>(llround(size));

    OracleResult result;
    result.provision_cap = provision_cap;

    std::vector<int> actions(static_cast<std::size_t>(n), 1);
    for (std::size_t idx = 0; idx < total; ++idx) {
        ActionAssignment assignment(actions, m);
        bool ok = !provision_cap || provision(instance, assignment) <= *provision_cap;
        if (ok) {
            double y = objective(instance, assignment);
            if (!result.assignment || y > result.objective) {
                result.assignment = std::move(assignment);
                result.objective = y;
            }
        }
        for (int p = n - 1; p >= 0; --p) {
            auto& a = actions[static_cast<std::size_t>(p)];
            if (a < m) {
                ++a;
                break;
            }
            a = 1;
        }
    }
    return result;
}

std::size_t dense_basis_index(std::span<const int> actions, int n_actions) {
    std::size_t index = 0;
    for (std::size_t p = 0; p < actions.size(); ++p) {
        index |= static_cast<std::size_t>(1)
                 << (p * static_cast<std::size_t>(n_actions) + static_cast<std::size_t>(actions[p] - 1));
    }
    return index;
}

std::vector<std::complex<double>> dense_qaoa_reference(const ProblemInstance& instance,
                                                       const Group& group, double epsilon,
                                                       std::span<const double> theta,
                                                       StepOrder order) {
    if (theta.size() % 2 != 0) {
        throw std::invalid_argument("dense_qaoa_reference: theta must hold (gamma, beta) pairs");
    }
    const std::vector<int> members = group.members();
    const int n = static_cast<int>(members.size());
    const int m = instance.n_actions;
    const int qubits = n * m;
    if (qubits > 12) throw GuardError("dense_qaoa_reference: more than 12 qubits");
    const std::size_t dim = static_cast<std::size_t>(1) << qubits;

    auto bit = [&](std::size_t s, int pos, int action) {
        return (s >> (static_cast<std::size_t>(pos) * m + static_cast<std::size_t>(action - 1))) & 1u;
    };

    // Diagonal cost Hamiltonian from number operators, defined on the
    // whole Hilbert space (not just the one-hot sector).
    std::vector<double> cost(dim, 0.0);
    for (std::size_t s = 0; s < dim; ++s) {
        double profit = 0.0;
        for (int p = 0; p < n; ++p) {
            for (int j = 1; j <= m; ++j) {
                if (bit(s, p, j)) profit += instance.h_at(members[static_cast<std::size_t>(p)], j);
            }
        }
        double welfare = 0.0;
        for (int pu = 0; pu < n; ++pu) {
            for (int pv = pu + 1; pv < n; ++pv) {
                double w = instance.assoc.weight(members[static_cast<std::size_t>(pu)],
                                                 members[static_cast<std::size_t>(pv)]);
                if (w != 0.0 && !bit(s, pu, 1) && !bit(s, pv, 1)) welfare += w;
            }
        }
        cost[s] = -(1.0 - epsilon) * profit - epsilon * welfare;
    }

    // XY-ring mixer: -(J/2)(XX + YY) per periodic bond swaps adjacent
    // excitations; the M = 2 bond appears twice.
    const double coupling = 1.0;
    Eigen::MatrixXd mixer = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                                  static_cast<Eigen::Index>(dim));
    for (int p = 0; p < n; ++p) {
        for (int j = 1; j <= m; ++j) {
            int jn = j % m + 1;
            if (jn == j) continue;
            const std::size_t mask = (static_cast<std::size_t>(1)
                                      << (static_cast<std::size_t>(p) * m + (j - 1))) |
                                     (static_cast<std::size_t>(1)
                                      << (static_cast<std::size_t>(p) * m + (jn - 1)));
            for (std::size_t s = 0; s < dim; ++s) {
                const std::size_t bits = s & mask;
                if (bits != 0 && bits != mask) {
                    mixer(static_cast<Eigen::Index>(s ^ mask), static_cast<Eigen::Index>(s)) -=
                        coupling;
                }
            }
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mixer);
    const Eigen::MatrixXd& vectors = solver.eigenvectors();
    const Eigen::VectorXd& values = solver.eigenvalues();

    using VectorXc = Eigen::VectorXcd;
    VectorXc psi = VectorXc::Zero(static_cast<Eigen::Index>(dim));
    std::vector<int> initial(static_cast<std::size_t>(n), 1);
    psi(static_cast<Eigen::Index>(dense_basis_index(initial, m))) = 1.0;

    auto apply_mixer = [&](double beta) {
        VectorXc coeffs = vectors.transpose() * psi;
        for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
            coeffs(k) *= std::exp(std::complex<double>(0.0, -beta * values(k)));
        }
        psi = vectors * coeffs;
    };
    auto apply_cost = [&](double gamma) {
        for (std::size_t s = 0; s < dim; ++s) {
            psi(static_cast<Eigen::Index>(s)) *= std::exp(std::complex<double>(0.0, -gamma * cost[s]));
        }
    };

    const int cycles = static_cast<int>(theta.size() / 2);
    for (int t = 0; t < cycles; ++t) {
        const double gamma = theta[static_cast<std::size_t>(2 * t)];
        const double beta = theta[static_cast<std::size_t>(2 * t) + 1];
        if (order == StepOrder::MixerThenCost) {
            apply_mixer(beta);
            apply_cost(gamma);
        } else {
            apply_cost(gamma);
            apply_mixer(beta);
        }
    }

    return {psi.data(), psi.data() + dim};
}

} // namespace qcbo
