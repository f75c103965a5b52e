#include "cqsim/state_vector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace cqsim {

namespace {

void check_dim(std::uint64_t dim) {
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("statevector dimension must be a power of two >= 2, got " +
                                    std::to_string(dim));
    }
    if (dim > limits::max_statevector_dim) {
        throw CapExceeded("statevector dimension " + std::to_string(dim) +
                          " exceeds cap " + std::to_string(limits::max_statevector_dim));
    }
}

} // namespace

StateVector::StateVector(std::vector<Complex> amps) : amps_(std::move(amps)) {
    check_dim(amps_.size());
    double norm_sq = 0.0;
    for (const Complex& a : amps_) norm_sq += std::norm(a);
    if (norm_sq < 1e-300) {
        throw std::invalid_argument("cannot normalize a zero vector");
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (Complex& a : amps_) a *= inv;
}

double StateVector::norm_error() const {
    double norm_sq = 0.0;
    for (const Complex& a : amps_) norm_sq += std::norm(a);
    return std::abs(norm_sq - 1.0);
}

StateVector basis_state(std::uint64_t dim, BasisIndex index) {
    check_dim(dim);
    if (index.value >= dim) {
        throw std::out_of_range("basis index " + std::to_string(index.value) +
                                " out of range for dimension " + std::to_string(dim));
    }
    std::vector<Complex> amps(dim, Complex{0.0, 0.0});
    amps[index.value] = Complex{1.0, 0.0};
    return StateVector(std::move(amps), StateVector::AlreadyNormalized{});
}

StateVector uniform_state(std::uint64_t dim) {
    check_dim(dim);
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    std::vector<Complex> amps(dim, Complex{amp, 0.0});
    return StateVector(std::move(amps), StateVector::AlreadyNormalized{});
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("inner product dimension mismatch");
    }
    Complex acc{0.0, 0.0};
    for (std::uint64_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    const std::uint64_t dim = a.dim() * b.dim();
    check_dim(dim);
    std::vector<Complex> amps(dim);
    for (std::uint64_t i = 0; i < a.dim(); ++i) {
        for (std::uint64_t j = 0; j < b.dim(); ++j) {
            amps[i * b.dim() + j] = a[i] * b[j];
        }
    }
    // product of normalized states is normalized; skip the renormalizing pass
    return StateVector(std::move(amps), StateVector::AlreadyNormalized{});
}

} // namespace cqsim
