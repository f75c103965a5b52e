#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cqsim/cqs.hpp"
#include "cqsim/density_matrix.hpp"

namespace cqsim {

// ---------------------------------------------------------------------
// Pseudo-pure (mixed) search states
// ---------------------------------------------------------------------

/// rho_0 = eps |u><u| + (1 - eps) I/d over the joint space of `problem`,
/// where |u> is the joint uniform state and d its dimension.
/// Throws std::invalid_argument for eps outside [0, 1], CapExceeded when
/// the joint dimension exceeds limits::max_density_dim.
DensityMatrix pseudo_pure_init(const CqsProblem& problem, double epsilon);

/// Conjugates rho by the k-round conditional-search circuit (k rounds of
/// G (x) G, then the global oracle). The maximally mixed component of a
/// pseudo-pure state is invariant under this, which tests exploit.
DensityMatrix pseudo_pure_evolve(const DensityMatrix& rho, const CqsProblem& problem,
                                 std::uint64_t iterations);

/// Success probability of the mixed-state protocol, three ways:
///  - simulated:    population of the joint target after density evolution
///  - closed_form:  (1 - eps)/d + eps sin^4(theta_k), exact
///  - paper_formula:(1 - eps)   + eps sin^4(theta_k), the published value,
///                  which drops the 1/d weight on the mixed term
struct PseudoPureSuccess {
    double simulated = 0.0;
    double closed_form = 0.0;
    double paper_formula = 0.0;
};
PseudoPureSuccess pseudo_pure_probability(const CqsProblem& problem, double epsilon,
                                          std::uint64_t iterations);

// ---------------------------------------------------------------------
// Multi-level amplitude damping
// ---------------------------------------------------------------------

/// One decay path |from> -> |to> with probability `rate`. from > to
/// always (amplitude damping moves population downward).
struct DecayRate {
    std::uint64_t from = 0;
    std::uint64_t to = 0;
    double rate = 0.0;
};

/// Damping channel on a d-level system, defined by a sparse list of decay
/// rates. kappa(j) = total decay probability out of level j; the channel
/// is CPTP iff every rate is in [0, 1] and every kappa(j) <= 1.
///
/// The constructor enforces structure only (indices in range, from > to,
/// no duplicate paths, d >= 1); rate values are checked by validate_cptp
/// and by the operations that need a physical channel, so that invalid
/// channels can be constructed, diagnosed, and rejected with a named
/// constraint instead of dying at parse time.
class MadChannel {
public:
    MadChannel(std::uint64_t levels, std::vector<DecayRate> rates);

    std::uint64_t levels() const { return levels_; }
    /// Sorted by (from, to); deterministic iteration order.
    const std::vector<DecayRate>& rates() const { return rates_; }

    /// Sum of rates out of `level` (0 for the ground state).
    double kappa(std::uint64_t level) const;
    /// Rate of |from> -> |to>, 0 when no such path is listed.
    double rate(std::uint64_t from, std::uint64_t to) const;

private:
    std::uint64_t levels_;
    std::vector<DecayRate> rates_;
    std::vector<double> kappa_;
};

/// Every excited level decays to the ground state with the same rate.
MadChannel uniform_decay_to_ground(std::uint64_t levels, double rate);

/// Kraus operators: K_0 = diag(sqrt(1 - kappa(j))) plus one
/// sqrt(rate) |to><from| per decay path. operators[0] is K_0, the rest
/// follow rates() order. Throws std::invalid_argument when a rate is
/// outside [0, 1] or some kappa(j) > 1.
struct KrausSet {
    std::vector<Eigen::MatrixXcd> operators;
};
KrausSet build_kraus(const MadChannel& channel);

/// Diagnostic CPTP audit. Never throws on an unphysical channel; it
/// reports. Checks, in order: every rate in [0, 1]; every kappa(j) <= 1;
/// Kraus completeness sum_K K^dag K = I within 1e-12; Choi positivity
/// (min eigenvalue >= -1e-10) when levels() <= limits::max_choi_levels.
/// The Choi matrix is assembled from the channel's action on matrix
/// units, independently of build_kraus.
struct CptpReport {
    bool pass = false;
    std::vector<std::string> violations;
    double completeness_error = 0.0;
    bool choi_checked = false;
    double min_choi_eigenvalue = 0.0;
};
CptpReport validate_cptp(const MadChannel& channel);

inline constexpr double kraus_completeness_tolerance = 1e-12;
inline constexpr double choi_psd_tolerance = -1e-10;

/// Applies the channel to rho via the structured update
///   out_ij = sqrt((1 - kappa(i)) (1 - kappa(j))) rho_ij
///   out_ii += sum over paths j -> i of rate * rho_jj
/// (O(d^2 + d * paths), no Kraus matrices materialized). The dense
/// Kraus-sum equivalent lives in the tests as the independent check.
/// Throws std::invalid_argument on dimension mismatch or an unphysical
/// channel.
DensityMatrix apply_mad(const MadChannel& channel, const DensityMatrix& rho);

/// Success probability of the conditional search under damping applied
/// once to the final state, three ways:
///  - simulated:    apply_mad on the exact final density matrix
///  - closed_form:  (1 - kappa(Y)) rho_YY + sum over paths J -> Y of
///                  rate * rho_JJ, with rho the exact final state
///  - paper_formula: 1 - kappa(Y), the published headline value; only
///                  meaningful at k = k* so it is empty elsewhere
struct MadSuccess {
    double simulated = 0.0;
    double closed_form = 0.0;
    std::optional<double> paper_formula;
};
MadSuccess mad_success_probability(const MadChannel& channel, const CqsProblem& problem,
                                   std::uint64_t iterations);

} // namespace cqsim
