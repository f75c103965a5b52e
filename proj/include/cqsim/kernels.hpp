#pragma once

#include <cstdint>
#include <span>

#include "cqsim/types.hpp"

// Low-level amplitude kernels. Everything here is an O(len) sweep over a
// raw span so the same code serves statevectors and density-matrix columns.

namespace cqsim::kernel {

/// a[index] *= -1. Throws std::out_of_range on a bad index.
void phase_flip(std::span<Complex> amps, std::uint64_t index);

/// Inversion about the mean: a_i -> 2*mean - a_i.
void invert_about_mean(std::span<Complex> amps);

/// Which tensor factor of a two-block joint state an operation acts on.
/// Joint index = i1 * block_dim + i2, so `first` is the high digit.
enum class Block { first, second };

/// Sign flip of every joint amplitude whose chosen block digit == marked.
/// joint.size() must equal block_dim^2; marked must be < block_dim.
void block_phase_flip(std::span<Complex> joint, std::uint64_t block_dim,
                      Block block, std::uint64_t marked);

/// Inversion about the mean applied within the chosen block, i.e. over
/// each fibre of joint indices sharing the other block's digit.
void block_invert_about_mean(std::span<Complex> joint, std::uint64_t block_dim,
                             Block block);

} // namespace cqsim::kernel
