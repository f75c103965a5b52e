#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cqsim/types.hpp"

namespace cqsim {

/// Pure state over a power-of-two dimensional Hilbert space, stored as a
/// dense amplitude vector. Operations that act on it live in kernels.hpp
/// and the algorithm modules; this class only owns storage and invariants.
class StateVector {
public:
    /// Takes ownership of an amplitude vector and normalizes it.
    /// Throws std::invalid_argument if the dimension is not a power of two
    /// (>= 2) or the vector has (near-)zero norm, CapExceeded if too large.
    explicit StateVector(std::vector<Complex> amps);

    std::uint64_t dim() const { return amps_.size(); }

    const Complex& operator[](std::uint64_t i) const { return amps_[i]; }

    std::span<Complex> amps() { return amps_; }
    std::span<const Complex> amps() const { return amps_; }

    /// |sum of |a_i|^2  -  1|. Zero for a freshly normalized state; the
    /// test suites bound its drift after long operation sequences.
    double norm_error() const;

private:
    struct AlreadyNormalized {};
    StateVector(std::vector<Complex> amps, AlreadyNormalized) : amps_(std::move(amps)) {}

    std::vector<Complex> amps_;

    friend StateVector basis_state(std::uint64_t dim, BasisIndex index);
    friend StateVector uniform_state(std::uint64_t dim);
    friend StateVector tensor(const StateVector& a, const StateVector& b);
};

/// |index> in a dim-dimensional space.
StateVector basis_state(std::uint64_t dim, BasisIndex index);

/// Equal real amplitude 1/sqrt(dim) on every basis state.
StateVector uniform_state(std::uint64_t dim);

/// <a|b>. Dimensions must match.
Complex inner_product(const StateVector& a, const StateVector& b);

/// Kronecker product; index convention is high-block-first:
/// (a (x) b)[i * b.dim() + j] = a[i] * b[j].
StateVector tensor(const StateVector& a, const StateVector& b);

} // namespace cqsim
