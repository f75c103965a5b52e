#include "cqsim/density_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cqsim {

namespace {

void check_dim(std::uint64_t dim) {
    if (dim == 0) {
        throw std::invalid_argument("density matrix dimension must be positive");
    }
    if (dim > limits::max_density_dim) {
        throw CapExceeded("density matrix dimension " + std::to_string(dim) +
                          " exceeds cap " + std::to_string(limits::max_density_dim));
    }
}

} // namespace

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    check_dim(psi.dim());
    const auto n = static_cast<Eigen::Index>(psi.dim());
    Eigen::Map<const Eigen::VectorXcd> v(psi.amps().data(), n);
    Eigen::MatrixXcd m = v * v.adjoint();
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(std::uint64_t dim) {
    check_dim(dim);
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(dim);
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_matrix(Eigen::MatrixXcd m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("density matrix must be square");
    }
    check_dim(static_cast<std::uint64_t>(m.rows()));
    return DensityMatrix(std::move(m));
}

double DensityMatrix::trace_error() const {
    return std::abs(mat_.trace() - Complex{1.0, 0.0});
}

double DensityMatrix::hermiticity_error() const {
    return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
}

double projector_probability(const DensityMatrix& rho, BasisIndex target) {
    if (target.value >= rho.dim()) {
        throw std::out_of_range("projector index " + std::to_string(target.value) +
                                " out of range for dimension " + std::to_string(rho.dim()));
    }
    const auto i = static_cast<Eigen::Index>(target.value);
    const Complex p = rho.matrix()(i, i);
    if (std::abs(p.imag()) > diag_imag_tolerance) {
        throw std::runtime_error("density matrix diagonal has imaginary part " +
                                 std::to_string(p.imag()) + "; state is corrupted");
    }
    return p.real();
}

} // namespace cqsim
