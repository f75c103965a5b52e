#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "cqsim/state_vector.hpp"
#include "cqsim/types.hpp"

namespace cqsim {

/// Mixed state as a dense Eigen matrix. Unlike StateVector the dimension
/// is not required to be a power of two; damping channels are defined for
/// any number of levels.
class DensityMatrix {
public:
    static DensityMatrix from_pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(std::uint64_t dim);
    /// Wraps an existing matrix (tests and channel internals). Square
    /// shape and the size cap are enforced; physicality is not.
    static DensityMatrix from_matrix(Eigen::MatrixXcd m);

    std::uint64_t dim() const { return static_cast<std::uint64_t>(mat_.rows()); }

    const Eigen::MatrixXcd& matrix() const { return mat_; }
    Eigen::MatrixXcd& matrix() { return mat_; }

    double trace_error() const;        // |tr(rho) - 1|
    double hermiticity_error() const;  // max |rho - rho^dagger|

private:
    explicit DensityMatrix(Eigen::MatrixXcd m) : mat_(std::move(m)) {}
    Eigen::MatrixXcd mat_;
};

/// <target| rho |target>, i.e. the population of one basis state.
/// Throws std::runtime_error if the diagonal entry has an imaginary part
/// above 1e-10: that signals a corrupted state, not a rounding artifact.
double projector_probability(const DensityMatrix& rho, BasisIndex target);

inline constexpr double diag_imag_tolerance = 1e-10;

} // namespace cqsim
