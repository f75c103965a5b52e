#pragma once

// Shared fixtures and independent reference implementations for the test
// suites. Everything random is driven by std::mt19937_64 with a fixed
// seed owned by the calling test, so failures reproduce exactly.

#include <algorithm>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "cqsim/density_matrix.hpp"
#include "cqsim/noise.hpp"
#include "cqsim/state_vector.hpp"

namespace helpers {

using cqsim::Complex;

inline cqsim::StateVector random_state(std::mt19937_64& rng, std::uint64_t dim) {
    std::normal_distribution<double> gauss;
    std::vector<Complex> amps(dim);
    for (Complex& a : amps) a = Complex{gauss(rng), gauss(rng)};
    return cqsim::StateVector(std::move(amps)); // constructor normalizes
}

/// Random full-rank density matrix: A A^dag scaled to unit trace.
inline Eigen::MatrixXcd random_density(std::mt19937_64& rng, std::uint64_t dim) {
    std::normal_distribution<double> gauss;
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            a(i, j) = Complex{gauss(rng), gauss(rng)};
        }
    }
    Eigen::MatrixXcd rho = a * a.adjoint();
    rho /= rho.trace().real();
    return rho;
}

/// Dense matrix of an in-place span operation, column by column. The
/// reference route for checking kernels against explicit linear algebra.
template <typename Op>
Eigen::MatrixXcd assemble_operator(std::uint64_t dim, Op&& op) {
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    std::vector<Complex> col(dim);
    for (std::uint64_t j = 0; j < dim; ++j) {
        std::fill(col.begin(), col.end(), Complex{0.0, 0.0});
        col[j] = Complex{1.0, 0.0};
        op(std::span<Complex>(col));
        for (std::uint64_t i = 0; i < dim; ++i) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
        }
    }
    return m;
}

/// Textbook channel application, sum_m K_m rho K_m^dag. The production
/// code never does this; it is the independent check for apply_mad.
inline Eigen::MatrixXcd kraus_apply(const cqsim::KrausSet& kraus, const Eigen::MatrixXcd& rho) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    for (const Eigen::MatrixXcd& k : kraus.operators) {
        out += k * rho * k.adjoint();
    }
    return out;
}

/// Random physical damping channel: each level gets a random subset of
/// lower levels, rates scaled so every kappa stays at or below 1.
inline cqsim::MadChannel random_valid_channel(std::mt19937_64& rng, std::uint64_t levels) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<cqsim::DecayRate> rates;
    for (std::uint64_t from = 1; from < levels; ++from) {
        std::vector<double> raw(from, 0.0);
        double total = 0.0;
        for (std::uint64_t to = 0; to < from; ++to) {
            if (unit(rng) < 0.5) {
                raw[to] = unit(rng);
                total += raw[to];
            }
        }
        if (total <= 0.0) continue;
        const double scale = unit(rng) / std::max(1.0, total);
        for (std::uint64_t to = 0; to < from; ++to) {
            if (raw[to] > 0.0) rates.push_back({from, to, raw[to] * scale});
        }
    }
    return cqsim::MadChannel(levels, std::move(rates));
}

/// Channel whose only defect is kappa(top) > 1; each individual rate is
/// in range, so the named constraint in diagnostics must be kappa.
/// Needs levels >= 3.
inline cqsim::MadChannel random_kappa_violating_channel(std::mt19937_64& rng,
                                                        std::uint64_t levels) {
    std::uniform_real_distribution<double> high(0.6, 1.0);
    std::vector<cqsim::DecayRate> rates = {
        {levels - 1, 0, high(rng)},
        {levels - 1, 1, high(rng)},
    };
    return cqsim::MadChannel(levels, std::move(rates));
}

/// Schmidt rank of a two-block joint state (joint index = i1 * B + i2):
/// number of singular values of the B x B coefficient matrix above tol.
inline int schmidt_rank(const cqsim::StateVector& joint, std::uint64_t block_dim, double tol) {
    const auto b = static_cast<Eigen::Index>(block_dim);
    Eigen::MatrixXcd coeff(b, b);
    for (Eigen::Index i = 0; i < b; ++i) {
        for (Eigen::Index j = 0; j < b; ++j) {
            coeff(i, j) = joint[static_cast<std::uint64_t>(i) * block_dim +
                                static_cast<std::uint64_t>(j)];
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(coeff);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > tol) ++rank;
    }
    return rank;
}

inline double max_amp_deviation(const cqsim::StateVector& a, const cqsim::StateVector& b) {
    double dev = 0.0;
    for (std::uint64_t i = 0; i < a.dim(); ++i) {
        dev = std::max(dev, std::abs(a[i] - b[i]));
    }
    return dev;
}

} // namespace helpers
