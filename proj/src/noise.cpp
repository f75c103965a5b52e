#include "cqsim/noise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace cqsim {

// ---------------------------------------------------------------------
// Pseudo-pure states
// ---------------------------------------------------------------------

DensityMatrix pseudo_pure_init(const CqsProblem& problem, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must be in [0, 1], got " + std::to_string(epsilon));
    }
    const std::uint64_t d = problem.joint_dim();
    if (d > limits::max_density_dim) {
        throw CapExceeded("joint dimension " + std::to_string(d) + " exceeds density cap " +
                          std::to_string(limits::max_density_dim));
    }
    // the uniform projector has every entry 1/d, so the whole matrix is
    // eps/d plus (1 - eps)/d down the diagonal
    const auto n = static_cast<Eigen::Index>(d);
    Eigen::MatrixXcd m =
        Eigen::MatrixXcd::Constant(n, n, Complex{epsilon / static_cast<double>(d), 0.0});
    m.diagonal().array() += Complex{(1.0 - epsilon) / static_cast<double>(d), 0.0};
    return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix pseudo_pure_evolve(const DensityMatrix& rho, const CqsProblem& problem,
                                 std::uint64_t iterations) {
    if (rho.dim() != problem.joint_dim()) {
        throw std::invalid_argument("density dimension " + std::to_string(rho.dim()) +
                                    " does not match joint dimension " +
                                    std::to_string(problem.joint_dim()));
    }
    const std::uint64_t d = rho.dim();
    Eigen::MatrixXcd m = rho.matrix();
    // U rho U^dag without materializing U: sweep the circuit over the
    // columns (giving U rho), take the adjoint (rho U^dag for Hermitian
    // rho), sweep again
    auto sweep = [&](Eigen::MatrixXcd& mat) {
        for (std::uint64_t j = 0; j < d; ++j) {
            std::span<Complex> col(mat.col(static_cast<Eigen::Index>(j)).data(), d);
            apply_cqs_circuit(col, problem, iterations);
        }
    };
    sweep(m);
    m.adjointInPlace();
    sweep(m);
    return DensityMatrix::from_matrix(std::move(m));
}

PseudoPureSuccess pseudo_pure_probability(const CqsProblem& problem, double epsilon,
                                          std::uint64_t iterations) {
    const DensityMatrix rho0 = pseudo_pure_init(problem, epsilon);
    const DensityMatrix rho = pseudo_pure_evolve(rho0, problem, iterations);

    PseudoPureSuccess out;
    out.simulated = projector_probability(rho, problem.joint_target());
    const double s = std::sin(iteration_angle(problem.block1, iterations));
    const double pure_term = s * s * s * s;
    const double d = static_cast<double>(problem.joint_dim());
    out.closed_form = (1.0 - epsilon) / d + epsilon * pure_term;
    out.paper_formula = (1.0 - epsilon) + epsilon * pure_term;
    return out;
}

// ---------------------------------------------------------------------
// Multi-level amplitude damping
// ---------------------------------------------------------------------

MadChannel::MadChannel(std::uint64_t levels, std::vector<DecayRate> rates)
    : levels_(levels), rates_(std::move(rates)) {
    if (levels_ < 1) {
        throw std::invalid_argument("channel needs at least one level");
    }
    if (levels_ > limits::max_density_dim) {
        throw CapExceeded("channel with " + std::to_string(levels_) + " levels exceeds cap " +
                          std::to_string(limits::max_density_dim));
    }
    for (const DecayRate& r : rates_) {
        if (r.from >= levels_) {
            throw std::invalid_argument("decay source level " + std::to_string(r.from) +
                                        " out of range for " + std::to_string(levels_) +
                                        " levels");
        }
        if (r.to >= r.from) {
            throw std::invalid_argument("decay path must go downward, got " +
                                        std::to_string(r.from) + " -> " + std::to_string(r.to));
        }
    }
    std::sort(rates_.begin(), rates_.end(), [](const DecayRate& a, const DecayRate& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    for (std::size_t i = 1; i < rates_.size(); ++i) {
        if (rates_[i].from == rates_[i - 1].from && rates_[i].to == rates_[i - 1].to) {
            throw std::invalid_argument("duplicate decay path " + std::to_string(rates_[i].from) +
                                        " -> " + std::to_string(rates_[i].to));
        }
    }
    kappa_.assign(levels_, 0.0);
    for (const DecayRate& r : rates_) kappa_[r.from] += r.rate;
}

double MadChannel::kappa(std::uint64_t level) const {
    if (level >= levels_) {
        throw std::out_of_range("level " + std::to_string(level) + " out of range");
    }
    return kappa_[level];
}

double MadChannel::rate(std::uint64_t from, std::uint64_t to) const {
    const auto it = std::lower_bound(
        rates_.begin(), rates_.end(), std::pair{from, to},
        [](const DecayRate& r, const std::pair<std::uint64_t, std::uint64_t>& key) {
            return r.from != key.first ? r.from < key.first : r.to < key.second;
        });
    if (it != rates_.end() && it->from == from && it->to == to) return it->rate;
    return 0.0;
}

MadChannel uniform_decay_to_ground(std::uint64_t levels, double rate) {
    std::vector<DecayRate> rates;
    for (std::uint64_t j = 1; j < levels; ++j) {
        rates.push_back(DecayRate{j, 0, rate});
    }
    return MadChannel(levels, std::move(rates));
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// first unsatisfied physicality constraint, empty string if none
std::string physicality_violation(const MadChannel& c) {
    for (const DecayRate& r : c.rates()) {
        if (!(r.rate >= 0.0 && r.rate <= 1.0)) {
            return "eta[" + std::to_string(r.from) + "][" + std::to_string(r.to) + "]=" +
                   fmt(r.rate) + " outside [0, 1]";
        }
    }
    for (std::uint64_t j = 0; j < c.levels(); ++j) {
        if (c.kappa(j) > 1.0) {
            return "kappa[" + std::to_string(j) + "]=" + fmt(c.kappa(j)) + " exceeds 1";
        }
    }
    return {};
}

// The structured channel action on an arbitrary matrix. Used by apply_mad
// and by the Choi assembly, so the Choi positivity check does not depend
// on build_kraus.
Eigen::MatrixXcd apply_structured(const MadChannel& c, const Eigen::MatrixXcd& in) {
    const auto d = in.rows();
    Eigen::MatrixXcd out(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const double fj = std::sqrt(1.0 - c.kappa(static_cast<std::uint64_t>(j)));
        for (Eigen::Index i = 0; i < d; ++i) {
            const double fi = std::sqrt(1.0 - c.kappa(static_cast<std::uint64_t>(i)));
            out(i, j) = fi * fj * in(i, j);
        }
    }
    for (const DecayRate& r : c.rates()) {
        const auto from = static_cast<Eigen::Index>(r.from);
        const auto to = static_cast<Eigen::Index>(r.to);
        out(to, to) += r.rate * in(from, from);
    }
    return out;
}

} // namespace

KrausSet build_kraus(const MadChannel& channel) {
    const std::string violation = physicality_violation(channel);
    if (!violation.empty()) {
        throw std::invalid_argument("channel is not physical: " + violation);
    }
    const auto d = static_cast<Eigen::Index>(channel.levels());
    KrausSet set;
    Eigen::MatrixXcd k0 = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        k0(j, j) = std::sqrt(1.0 - channel.kappa(static_cast<std::uint64_t>(j)));
    }
    set.operators.push_back(std::move(k0));
    for (const DecayRate& r : channel.rates()) {
        Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(d, d);
        k(static_cast<Eigen::Index>(r.to), static_cast<Eigen::Index>(r.from)) =
            std::sqrt(r.rate);
        set.operators.push_back(std::move(k));
    }
    return set;
}

CptpReport validate_cptp(const MadChannel& channel) {
    CptpReport report;
    for (const DecayRate& r : channel.rates()) {
        if (!(r.rate >= 0.0 && r.rate <= 1.0)) {
            report.violations.push_back("eta[" + std::to_string(r.from) + "][" +
                                        std::to_string(r.to) + "]=" + fmt(r.rate) +
                                        " outside [0, 1]");
        }
    }
    for (std::uint64_t j = 0; j < channel.levels(); ++j) {
        if (channel.kappa(j) > 1.0) {
            report.violations.push_back("kappa[" + std::to_string(j) + "]=" +
                                        fmt(channel.kappa(j)) + " exceeds 1");
        }
    }
    if (!report.violations.empty()) {
        return report; // Kraus set is not even constructible
    }

    // completeness of the built Kraus set. sum K^dag K is diagonal here
    // (K_0 is diagonal, each decay operator has a single entry), so the
    // diagonal accumulation below is the whole matrix.
    const KrausSet kraus = build_kraus(channel);
    const std::uint64_t d = channel.levels();
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    for (std::uint64_t j = 0; j < d; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        diag(jj) += std::norm(kraus.operators[0](jj, jj));
    }
    for (std::size_t p = 0; p < channel.rates().size(); ++p) {
        const DecayRate& r = channel.rates()[p];
        diag(static_cast<Eigen::Index>(r.from)) +=
            std::norm(kraus.operators[p + 1](static_cast<Eigen::Index>(r.to),
                                             static_cast<Eigen::Index>(r.from)));
    }
    report.completeness_error = (diag.array() - 1.0).abs().maxCoeff();
    if (report.completeness_error > kraus_completeness_tolerance) {
        report.violations.push_back("kraus completeness error " +
                                    fmt(report.completeness_error) + " exceeds " +
                                    fmt(kraus_completeness_tolerance));
    }

    // Choi positivity for small channels, assembled from the structured
    // channel action on matrix units
    if (d <= limits::max_choi_levels) {
        const auto di = static_cast<Eigen::Index>(d);
        Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(di * di, di * di);
        Eigen::MatrixXcd unit = Eigen::MatrixXcd::Zero(di, di);
        for (Eigen::Index i = 0; i < di; ++i) {
            for (Eigen::Index j = 0; j < di; ++j) {
                unit(i, j) = Complex{1.0, 0.0};
                choi.block(i * di, j * di, di, di) = apply_structured(channel, unit);
                unit(i, j) = Complex{0.0, 0.0};
            }
        }
        const Eigen::MatrixXcd sym = 0.5 * (choi + choi.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym,
                                                               Eigen::EigenvaluesOnly);
        report.choi_checked = true;
        report.min_choi_eigenvalue = solver.eigenvalues().minCoeff();
        if (report.min_choi_eigenvalue < choi_psd_tolerance) {
            report.violations.push_back(
                "choi matrix not positive semidefinite: min eigenvalue " +
                fmt(report.min_choi_eigenvalue));
        }
    }

    report.pass = report.violations.empty();
    return report;
}

DensityMatrix apply_mad(const MadChannel& channel, const DensityMatrix& rho) {
    const std::string violation = physicality_violation(channel);
    if (!violation.empty()) {
        throw std::invalid_argument("channel is not physical: " + violation);
    }
    if (channel.levels() != rho.dim()) {
        throw std::invalid_argument("channel has " + std::to_string(channel.levels()) +
                                    " levels but the state has dimension " +
                                    std::to_string(rho.dim()));
    }
    return DensityMatrix::from_matrix(apply_structured(channel, rho.matrix()));
}

MadSuccess mad_success_probability(const MadChannel& channel, const CqsProblem& problem,
                                   std::uint64_t iterations) {
    if (channel.levels() != problem.joint_dim()) {
        throw std::invalid_argument("channel has " + std::to_string(channel.levels()) +
                                    " levels but the joint space has dimension " +
                                    std::to_string(problem.joint_dim()));
    }
    const CqsRun run = cqs_run(problem, iterations);
    const DensityMatrix rho = DensityMatrix::from_pure(run.state);
    const std::uint64_t target = problem.joint_target().value;

    MadSuccess out;
    out.simulated = projector_probability(apply_mad(channel, rho), problem.joint_target());

    // closed form straight from the exact pure amplitudes: survival of the
    // target population plus whatever decays into the target
    double acc = (1.0 - channel.kappa(target)) * std::norm(run.state[target]);
    for (const DecayRate& r : channel.rates()) {
        if (r.to == target) acc += r.rate * std::norm(run.state[r.from]);
    }
    out.closed_form = acc;

    if (iterations == optimal_iterations(problem.block1)) {
        out.paper_formula = 1.0 - channel.kappa(target);
    }
    return out;
}

} // namespace cqsim
