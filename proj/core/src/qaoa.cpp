#include "qcbo/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcbo/nelder_mead.hpp"
#include "qcbo/rng.hpp"

namespace qcbo {

std::size_t subspace_dimension(int n_members, int n_actions) {
    std::size_t dim = 1;
    for (int i = 0; i < n_members; ++i) {
        if (dim > (static_cast<std::size_t>(1) << 60) / static_cast<std::size_t>(n_actions)) {
            throw GuardError("subspace dimension overflow");
        }
        dim *= static_cast<std::size_t>(n_actions);
    }
    return dim;
}

std::vector<int> index_to_actions(std::size_t index, int n_members, int n_actions) {
    std::vector<int> actions(static_cast<std::size_t>(n_members));
    for (int i = n_members - 1; i >= 0; --i) {
        actions[static_cast<std::size_t>(i)] =
            static_cast<int>(index % static_cast<std::size_t>(n_actions)) + 1;
        index /= static_cast<std::size_t>(n_actions);
    }
    return actions;
}

std::size_t actions_to_index(std::span<const int> actions, int n_actions) {
    std::size_t index = 0;
    for (int a : actions) {
        index = index * static_cast<std::size_t>(n_actions) + static_cast<std::size_t>(a - 1);
    }
    return index;
}

GroupHamiltonians build_hamiltonians(const ProblemInstance& instance, const Group& group,
                                     double epsilon) {
    GroupHamiltonians hams;
    hams.members = group.members();
    hams.n_actions = instance.n_actions;
    const int n = static_cast<int>(hams.members.size());
    const int m = instance.n_actions;
    if (n < 1) throw std::invalid_argument("build_hamiltonians: empty group");
    for (int id : hams.members) {
        if (id < 1 || id > instance.n_loanees) {
            throw std::invalid_argument("build_hamiltonians: group references unknown loanee");
        }
    }

    // Edges of the association graph with both endpoints in the group,
    // expressed in member positions.
    std::vector<std::tuple<int, int, double>> edges;
    for (int pu = 0; pu < n; ++pu) {
        for (int pv = pu + 1; pv < n; ++pv) {
            double w = instance.assoc.weight(hams.members[static_cast<std::size_t>(pu)],
                                             hams.members[static_cast<std::size_t>(pv)]);
            if (w != 0.0) edges.emplace_back(pu, pv, w);
        }
    }

    const std::size_t dim = subspace_dimension(n, m);
    hams.cost_diag.resize(dim);
    std::vector<int> actions(static_cast<std::size_t>(n), 1);
    for (std::size_t c = 0; c < dim; ++c) {
        double profit = 0.0;
        for (int p = 0; p < n; ++p) {
            profit += instance.h_at(hams.members[static_cast<std::size_t>(p)],
                                    actions[static_cast<std::size_t>(p)]);
        }
        double welfare = 0.0;
        for (const auto& [pu, pv, w] : edges) {
            if (actions[static_cast<std::size_t>(pu)] != 1 &&
                actions[static_cast<std::size_t>(pv)] != 1) {
                welfare += w;
            }
        }
        hams.cost_diag[c] = -(1.0 - epsilon) * profit - epsilon * welfare;

        // Advance the mixed-radix configuration (last member fastest).
        for (int p = n - 1; p >= 0; --p) {
            auto& a = actions[static_cast<std::size_t>(p)];
            if (a < m) {
                ++a;
                break;
            }
            a = 1;
        }
    }

    // XY ring restricted to one excitation: -J per ring bond between
    // actions j and j'. The periodic sum visits the single M = 2 bond
    // twice, which is kept literally.
    hams.mixer_block.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int j = 0; j < m; ++j) {
        int k = (j + 1) % m;
        if (j == k) continue;
        hams.mixer_block[static_cast<std::size_t>(j) * m + k] -= hams.coupling;
        hams.mixer_block[static_cast<std::size_t>(k) * m + j] -= hams.coupling;
    }
    return hams;
}

double SubspaceState::norm() const {
    double sum = 0.0;
    for (const auto& a : amplitudes) sum += std::norm(a);
    return std::sqrt(sum);
}

SubspaceState initial_state(const Group& group, int n_actions) {
    SubspaceState state;
    state.n_members = static_cast<int>(group.members().size());
    state.n_actions = n_actions;
    state.amplitudes.assign(subspace_dimension(state.n_members, n_actions), {0.0, 0.0});
    state.amplitudes[0] = {1.0, 0.0}; // all-DPO configuration has index 0
    return state;
}

namespace {

using Complex = std::complex<double>;

/// Mixer cycle unitary exp(-i beta B) for the M x M circulant block B.
/// B's eigenvectors are the discrete Fourier modes with eigenvalues
/// -2J cos(2 pi k / M) (the M = 2 double bond is covered by the same
/// formula), so the exponential has the closed form below.
std::vector<Complex> mixer_unitary(int m, double coupling, double beta) {
    const double tau = 2.0 * std::numbers::pi / m;
    std::vector<Complex> phases(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        double eigenvalue = -2.0 * coupling * std::cos(tau * k);
        phases[static_cast<std::size_t>(k)] = std::exp(Complex(0.0, -beta * eigenvalue));
    }
    std::vector<Complex> u(static_cast<std::size_t>(m) * m, Complex{0.0, 0.0});
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            Complex sum{0.0, 0.0};
            for (int k = 0; k < m; ++k) {
                double angle = tau * k * (a - b);
                sum += phases[static_cast<std::size_t>(k)] * Complex(std::cos(angle), std::sin(angle));
            }
            u[static_cast<std::size_t>(a) * m + b] = sum / static_cast<double>(m);
        }
    }
    return u;
}

/// Applies the M x M unitary along every member axis of the state
/// tensor: per axis, each length-M fiber is loaded once, multiplied in
/// registers and written back.
void apply_mixer(std::vector<Complex>& amps, int n_members, int m,
                 const std::vector<Complex>& u, std::vector<Complex>& fiber) {
    const std::size_t dim = amps.size();
    fiber.resize(static_cast<std::size_t>(m));
    std::size_t stride = dim / static_cast<std::size_t>(m); // member 0 first
    for (int axis = 0; axis < n_members; ++axis) {
        const std::size_t block = stride * static_cast<std::size_t>(m);
        for (std::size_t base = 0; base < dim; base += block) {
            for (std::size_t offset = 0; offset < stride; ++offset) {
                Complex* slot = amps.data() + base + offset;
                for (int t = 0; t < m; ++t) fiber[static_cast<std::size_t>(t)] = slot[stride * t];
                for (int a = 0; a < m; ++a) {
                    // Plain real/imaginary arithmetic; operands are
                    // always finite, so std::complex's overflow-
                    // recovery multiply is dead weight here.
                    double acc_re = 0.0, acc_im = 0.0;
                    const Complex* row = u.data() + static_cast<std::size_t>(a) * m;
                    for (int b = 0; b < m; ++b) {
                        const double ur = row[b].real(), ui = row[b].imag();
                        const double fr = fiber[static_cast<std::size_t>(b)].real();
                        const double fi = fiber[static_cast<std::size_t>(b)].imag();
                        acc_re += ur * fr - ui * fi;
                        acc_im += ur * fi + ui * fr;
                    }
                    slot[stride * a] = Complex(acc_re, acc_im);
                }
            }
        }
        stride /= static_cast<std::size_t>(m);
    }
}

void apply_cost_phase(std::vector<Complex>& amps, const std::vector<double>& cost_diag,
                      double gamma) {
    for (std::size_t c = 0; c < amps.size(); ++c) {
        double angle = -gamma * cost_diag[c];
        amps[c] *= Complex(std::cos(angle), std::sin(angle));
    }
}

} // namespace

SubspaceState evolve(const SubspaceState& state, const GroupHamiltonians& hams,
                     std::span<const double> theta, StepOrder order) {
    if (theta.size() % 2 != 0) {
        throw std::invalid_argument("evolve: theta must hold (gamma, beta) pairs");
    }
    if (state.amplitudes.size() != hams.cost_diag.size()) {
        throw std::invalid_argument("evolve: state and Hamiltonians disagree on dimension");
    }
    SubspaceState out = state;
    std::vector<Complex> scratch;
    const int cycles = static_cast<int>(theta.size() / 2);
    for (int t = 0; t < cycles; ++t) {
        const double gamma = theta[static_cast<std::size_t>(2 * t)];
        const double beta = theta[static_cast<std::size_t>(2 * t) + 1];
        auto u = mixer_unitary(hams.n_actions, hams.coupling, beta);
        if (order == StepOrder::MixerThenCost) {
            apply_mixer(out.amplitudes, out.n_members, out.n_actions, u, scratch);
            apply_cost_phase(out.amplitudes, hams.cost_diag, gamma);
        } else {
            apply_cost_phase(out.amplitudes, hams.cost_diag, gamma);
            apply_mixer(out.amplitudes, out.n_members, out.n_actions, u, scratch);
        }
    }
    return out;
}

double energy(const SubspaceState& state, const GroupHamiltonians& hams) {
    if (state.amplitudes.size() != hams.cost_diag.size()) {
        throw std::invalid_argument("energy: state and Hamiltonians disagree on dimension");
    }
    double e = 0.0;
    for (std::size_t c = 0; c < state.amplitudes.size(); ++c) {
        e += std::norm(state.amplitudes[c]) * hams.cost_diag[c];
    }
    return e;
}

GroupSolution optimize_group(const ProblemInstance& instance, const Group& group, double epsilon,
                             const QaoaConfig& config, std::uint64_t seed) {
    if (config.cycles < 1) throw std::invalid_argument("optimize_group: cycles must be >= 1");
    if (config.restarts < 1) throw std::invalid_argument("optimize_group: restarts must be >= 1");

    GroupHamiltonians hams = build_hamiltonians(instance, group, epsilon);
    const SubspaceState psi0 = initial_state(group, instance.n_actions);

    auto objective_fn = [&](std::span<const double> theta) {
        return energy(evolve(psi0, hams, theta, config.order), hams);
    };

    Rng rng(seed);
    std::vector<double> best_theta;
    double best_energy = 0.0;
    bool have_best = false;
    for (int r = 0; r < config.restarts; ++r) {
        std::vector<double> theta0(static_cast<std::size_t>(2 * config.cycles));
        for (double& v : theta0) v = rng.next_double();
        MinimizeResult res = nelder_mead(objective_fn, theta0, 0.25, config.max_evaluations);
        if (!have_best || res.value < best_energy) {
            best_energy = res.value;
            best_theta = std::move(res.x);
            have_best = true;
        }
    }

    GroupSolution solution;
    solution.theta = best_theta;
    SubspaceState final_state = evolve(psi0, hams, best_theta, config.order);
    solution.energy = energy(final_state, hams);
    solution.probabilities.resize(final_state.amplitudes.size());
    for (std::size_t c = 0; c < final_state.amplitudes.size(); ++c) {
        solution.probabilities[c] = std::norm(final_state.amplitudes[c]);
    }
    return solution;
}

} // namespace qcbo
