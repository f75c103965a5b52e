#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace cqsim {

using Complex = std::complex<double>;

/// Index of a computational basis state. A plain wrapper so signatures
/// can't confuse basis labels with iteration counts or dimensions.
struct BasisIndex {
    std::uint64_t value = 0;
    friend bool operator==(BasisIndex, BasisIndex) = default;
};

/// Thrown when a requested simulation would exceed one of the size caps
/// in limits.hpp. Callers map this to its own exit status.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace limits {

// Largest statevector we agree to allocate (2^26 complex doubles = 1 GiB).
inline constexpr std::uint64_t max_statevector_dim = std::uint64_t{1} << 26;

// Largest density matrix side length (4096^2 complex doubles = 256 MiB).
inline constexpr std::uint64_t max_density_dim = 4096;

// Choi-matrix positivity is a d^2 x d^2 eigenproblem; only run it for
// small channels. Larger channels still get the cheap CPTP checks.
inline constexpr std::uint64_t max_choi_levels = 32;

// The speed-up sweep simulates the full-space baseline only up to this
// joint dimension; past it the closed form is reported instead.
inline constexpr std::uint64_t max_simulated_baseline_dim = 4096;

} // namespace limits

} // namespace cqsim
