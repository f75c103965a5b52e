#include "cqsim/grover.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cqsim/kernels.hpp"

namespace cqsim {

SearchSpace make_search_space(int qubits, BasisIndex marked) {
    if (qubits < 1 || qubits > 32) {
        throw std::invalid_argument("qubit count must be in [1, 32], got " +
                                    std::to_string(qubits));
    }
    const std::uint64_t dim = std::uint64_t{1} << qubits;
    if (marked.value >= dim) {
        throw std::invalid_argument("marked item " + std::to_string(marked.value) +
                                    " out of range for dimension " + std::to_string(dim));
    }
    const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(dim)));
    return SearchSpace{qubits, dim, marked, theta};
}

double iteration_angle(const SearchSpace& space, std::uint64_t k) {
    return (2.0 * static_cast<double>(k) + 1.0) * space.theta;
}

StateVector uniform_superposition(const SearchSpace& space) {
    return uniform_state(space.dim);
}

void apply_local_oracle(StateVector& state, BasisIndex marked, QueryLedger& ledger) {
    kernel::phase_flip(state.amps(), marked.value);
    ++ledger.local_oracle_calls;
}

void apply_diffusion(StateVector& state, QueryLedger& ledger) {
    kernel::invert_about_mean(state.amps());
    ++ledger.diffusion_calls;
}

void grover_step(StateVector& state, const SearchSpace& space, QueryLedger& ledger) {
    apply_local_oracle(state, space.marked, ledger);
    apply_diffusion(state, ledger);
}

AnalyticState analytic_state(const SearchSpace& space, std::uint64_t k) {
    const double angle = iteration_angle(space, k);
    return AnalyticState{
        std::cos(angle) / std::sqrt(static_cast<double>(space.dim - 1)),
        std::sin(angle),
    };
}

std::uint64_t optimal_iterations(const SearchSpace& space) {
    const double k = std::round(std::numbers::pi / (4.0 * space.theta) - 0.5);
    return k < 0.0 ? 0 : static_cast<std::uint64_t>(k);
}

} // namespace cqsim
