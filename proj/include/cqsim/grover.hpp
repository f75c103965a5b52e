#pragma once

#include <cstdint>

#include "cqsim/state_vector.hpp"
#include "cqsim/types.hpp"

namespace cqsim {

/// Running count of oracle and diffusion applications. "Local" oracles
/// mark one block's item; the "global" oracle recognizes the joint target
/// of a two-block search. Kept separate because the two are not
/// interchangeable resources when comparing protocols.
struct QueryLedger {
    std::uint64_t local_oracle_calls = 0;
    std::uint64_t global_oracle_calls = 0;
    std::uint64_t diffusion_calls = 0;

    friend bool operator==(const QueryLedger&, const QueryLedger&) = default;
};

/// An unstructured search instance: n qubits, one marked item, and the
/// base rotation angle theta = asin(1/sqrt(2^n)).
struct SearchSpace {
    int qubits = 0;
    std::uint64_t dim = 0;
    BasisIndex marked;
    double theta = 0.0;
};

/// Throws std::invalid_argument for qubits outside [1, 32] or marked
/// outside the space.
SearchSpace make_search_space(int qubits, BasisIndex marked);

/// theta_k = (2k + 1) * theta.
double iteration_angle(const SearchSpace& space, std::uint64_t k);

StateVector uniform_superposition(const SearchSpace& space);

/// Sign flip on the marked item; counts one local oracle call.
void apply_local_oracle(StateVector& state, BasisIndex marked, QueryLedger& ledger);

/// Inversion about the mean; counts one diffusion call.
void apply_diffusion(StateVector& state, QueryLedger& ledger);

/// One search iteration: oracle then diffusion.
void grover_step(StateVector& state, const SearchSpace& space, QueryLedger& ledger);

/// Exact amplitudes after k iterations from the uniform start:
/// every unmarked item carries cos(theta_k)/sqrt(dim - 1), the marked
/// item sin(theta_k). Signs included; the simulator must match both.
struct AnalyticState {
    double unmarked_amp = 0.0;
    double marked_amp = 0.0;
};
AnalyticState analytic_state(const SearchSpace& space, std::uint64_t k);

/// k* = round(pi / (4 theta) - 1/2), rounding half away from zero.
/// Smallest iteration count at which sin^2(theta_k) peaks; 1 for n = 1.
std::uint64_t optimal_iterations(const SearchSpace& space);

} // namespace cqsim
