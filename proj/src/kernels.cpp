#include "cqsim/kernels.hpp"

#include <stdexcept>
#include <string>

namespace cqsim::kernel {

void phase_flip(std::span<Complex> amps, std::uint64_t index) {
    if (index >= amps.size()) {
        throw std::out_of_range("phase_flip index " + std::to_string(index) +
                                " out of range for size " + std::to_string(amps.size()));
    }
    amps[index] = -amps[index];
}

void invert_about_mean(std::span<Complex> amps) {
    Complex sum{0.0, 0.0};
    for (const Complex& a : amps) sum += a;
    const Complex two_mean = 2.0 * sum / static_cast<double>(amps.size());
    for (Complex& a : amps) a = two_mean - a;
}

namespace {

void check_joint(std::span<Complex> joint, std::uint64_t block_dim, std::uint64_t marked) {
    if (block_dim == 0 || joint.size() != block_dim * block_dim) {
        throw std::invalid_argument("joint span size " + std::to_string(joint.size()) +
                                    " is not block_dim^2 for block_dim " +
                                    std::to_string(block_dim));
    }
    if (marked >= block_dim) {
        throw std::out_of_range("marked item " + std::to_string(marked) +
                                " out of range for block dimension " + std::to_string(block_dim));
    }
}

} // namespace

void block_phase_flip(std::span<Complex> joint, std::uint64_t block_dim,
                      Block block, std::uint64_t marked) {
    check_joint(joint, block_dim, marked);
    if (block == Block::first) {
        // high digit fixed: one contiguous run
        Complex* row = joint.data() + marked * block_dim;
        for (std::uint64_t j = 0; j < block_dim; ++j) row[j] = -row[j];
    } else {
        // low digit fixed: stride block_dim
        for (std::uint64_t i = 0; i < block_dim; ++i) {
            joint[i * block_dim + marked] = -joint[i * block_dim + marked];
        }
    }
}

void block_invert_about_mean(std::span<Complex> joint, std::uint64_t block_dim, Block block) {
    check_joint(joint, block_dim, 0);
    const double inv_dim = 1.0 / static_cast<double>(block_dim);
    if (block == Block::first) {
        // fibres run over the high digit at fixed low digit
        for (std::uint64_t j = 0; j < block_dim; ++j) {
            Complex sum{0.0, 0.0};
            for (std::uint64_t i = 0; i < block_dim; ++i) sum += joint[i * block_dim + j];
            const Complex two_mean = 2.0 * sum * inv_dim;
            for (std::uint64_t i = 0; i < block_dim; ++i) {
                joint[i * block_dim + j] = two_mean - joint[i * block_dim + j];
            }
        }
    } else {
        for (std::uint64_t i = 0; i < block_dim; ++i) {
            Complex* row = joint.data() + i * block_dim;
            Complex sum{0.0, 0.0};
            for (std::uint64_t j = 0; j < block_dim; ++j) sum += row[j];
            const Complex two_mean = 2.0 * sum * inv_dim;
            for (std::uint64_t j = 0; j < block_dim; ++j) row[j] = two_mean - row[j];
        }
    }
}

} // namespace cqsim::kernel
