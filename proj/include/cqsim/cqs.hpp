#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cqsim/grover.hpp"
#include "cqsim/state_vector.hpp"

namespace cqsim {

/// Conditional quantum search instance: two blocks of equal qubit count,
/// each with its own marked item, searched jointly for the coincidence
/// state |marked1>|marked2>. Joint basis index = i1 * block_dim + i2
/// (block 1 is the high digit).
struct CqsProblem {
    SearchSpace block1;
    SearchSpace block2;

    std::uint64_t joint_dim() const { return block1.dim * block2.dim; }
    BasisIndex joint_target() const {
        return BasisIndex{block1.marked.value * block2.dim + block2.marked.value};
    }
};

/// Throws std::invalid_argument on mismatched/invalid blocks (both blocks
/// must have the same qubit count, each marked item in range).
CqsProblem make_cqs_problem(int qubits_per_block, BasisIndex marked1, BasisIndex marked2);

/// Checks the sign relation the protocol rests on: applying both local
/// oracles to the joint target state equals applying minus the global
/// oracle, i.e. (I_1 (x) I_2)|t> = -(I_g |t>) = +|t>. Also confirms the
/// two operators are NOT equal as operators by exhibiting a witness
/// basis state they treat differently.
bool verify_symmetry_matching(const CqsProblem& problem);

/// One (G (x) G) round in place on a raw joint amplitude span: both local
/// oracles, then both block diffusions. Keeps no ledger; callers account
/// for the two local queries and two diffusions.
void apply_cqs_round(std::span<Complex> joint, const CqsProblem& problem);

/// Full k-round circuit (k rounds of G (x) G, then the global oracle) on
/// a raw joint amplitude span. Shared by the pure-state run and the
/// density-matrix evolution, which sweeps it over matrix columns.
void apply_cqs_circuit(std::span<Complex> joint, const CqsProblem& problem,
                       std::uint64_t iterations);

struct CqsRun {
    StateVector state;
    QueryLedger ledger;
};

/// Full-space simulation of the protocol: k rounds of (G (x) G) on the
/// joint uniform state, then one global oracle. Ledger comes back with
/// exactly 2k local calls, 1 global call, 2k diffusion calls.
CqsRun cqs_run(const CqsProblem& problem, std::uint64_t iterations);

/// Product-form simulation: evolves the two blocks independently (valid
/// before the final global oracle, which only changes the joint target's
/// sign). marked_amp is the joint target amplitude, the product of the
/// two block amplitudes; its square is the success probability.
struct FactoredCqsRun {
    StateVector block1;
    StateVector block2;
    double marked_amp = 0.0;
};
FactoredCqsRun cqs_run_factored(const CqsProblem& problem, std::uint64_t iterations);

/// |<target|state>|^2.
double success_probability(const StateVector& state, BasisIndex target);

/// Standard single-oracle search over the joint space for the same
/// coincidence target, for comparison. Each iteration costs one global
/// oracle call; the ledger records that.
CqsRun full_space_grover_baseline(const CqsProblem& problem, std::uint64_t iterations);

/// Success probability at which a protocol row counts as "reached" in
/// the speed-up table.
inline constexpr double speedup_success_threshold = 0.9;

/// One row of the query-scaling comparison for block size `qubits`.
/// The conditional protocol runs factored at its per-block k*; the
/// baseline runs at its joint k*, simulated only while the joint
/// dimension stays within limits::max_simulated_baseline_dim (beyond
/// that the closed form is reported and baseline_simulated is false).
struct SpeedupRow {
    int qubits = 0;
    std::uint64_t block_dim = 0;
    std::uint64_t cqs_iterations = 0;
    std::uint64_t cqs_local_queries = 0;
    std::uint64_t cqs_global_queries = 0;
    double cqs_success = 0.0;
    std::uint64_t baseline_iterations = 0;
    std::uint64_t baseline_global_queries = 0;
    double baseline_success = 0.0;
    bool baseline_simulated = false;
    /// baseline oracle calls per conditional-protocol oracle call
    /// (local and global counted alike): k*_joint / (2 k*_block + 1).
    double query_ratio = 0.0;
};

/// Rows for qubits = min..max inclusive, both marked items all-ones.
/// Throws std::invalid_argument on an empty or out-of-range span.
std::vector<SpeedupRow> speedup_report(int min_qubits, int max_qubits);

} // namespace cqsim
