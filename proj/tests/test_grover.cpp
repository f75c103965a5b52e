#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cqsim/grover.hpp"
#include "helpers.hpp"

using namespace cqsim;

namespace {

// Independent reference: the search iteration reduced to the invariant
// two-dimensional subspace (common unmarked amplitude u, marked amplitude
// m). oracle: m -> -m; diffusion: a -> 2*mean - a. No trig involved, so
// it checks both the simulator and the closed form from a third side.
struct TwoLevel {
    double u;
    double m;
};

TwoLevel reference_step(TwoLevel s, std::uint64_t dim) {
    s.m = -s.m;
    const double mean = ((static_cast<double>(dim) - 1.0) * s.u + s.m) / static_cast<double>(dim);
    return TwoLevel{2.0 * mean - s.u, 2.0 * mean - s.m};
}

} // namespace

TEST_CASE("make_search_space pins theta to asin(1/sqrt(N))") {
    for (int n = 1; n <= 20; ++n) {
        const SearchSpace space = make_search_space(n, BasisIndex{0});
        CHECK(space.dim == (std::uint64_t{1} << n));
        CHECK(std::abs(std::sin(space.theta) * std::sqrt(static_cast<double>(space.dim)) - 1.0) <
              1e-14);
    }
    CHECK_THROWS_AS(make_search_space(0, BasisIndex{0}), std::invalid_argument);
    CHECK_THROWS_AS(make_search_space(33, BasisIndex{0}), std::invalid_argument);
    CHECK_THROWS_AS(make_search_space(2, BasisIndex{4}), std::invalid_argument);
}

TEST_CASE("iteration_angle is the odd multiple of theta") {
    const SearchSpace space = make_search_space(4, BasisIndex{7});
    CHECK(iteration_angle(space, 0) == doctest::Approx(space.theta).epsilon(1e-15));
    CHECK(iteration_angle(space, 3) == doctest::Approx(7.0 * space.theta).epsilon(1e-15));
}

TEST_CASE("oracle and diffusion keep the ledger honest") {
    const SearchSpace space = make_search_space(3, BasisIndex{5});
    StateVector s = uniform_superposition(space);
    QueryLedger ledger;
    for (int k = 0; k < 4; ++k) grover_step(s, space, ledger);
    CHECK(ledger == QueryLedger{4, 0, 4});
}

TEST_CASE("simulation, closed form, and the two-level recursion agree") {
    for (int n = 1; n <= 8; ++n) {
        const std::uint64_t all_ones = (std::uint64_t{1} << n) - 1;
        const SearchSpace space = make_search_space(n, BasisIndex{all_ones});
        StateVector s = uniform_superposition(space);
        QueryLedger ledger;
        TwoLevel ref{1.0 / std::sqrt(static_cast<double>(space.dim)),
                     1.0 / std::sqrt(static_cast<double>(space.dim))};
        const std::uint64_t k_max = 3 * optimal_iterations(space) + 2;
        for (std::uint64_t k = 0; k <= k_max; ++k) {
            if (k > 0) {
                grover_step(s, space, ledger);
                ref = reference_step(ref, space.dim);
            }
            const AnalyticState closed = analytic_state(space, k);
            // marked amplitude: all three routes
            CHECK(std::abs(s[all_ones] - Complex{ref.m, 0.0}) < 1e-12);
            CHECK(std::abs(closed.marked_amp - ref.m) < 1e-12);
            // every unmarked amplitude equals the common value, signs too
            for (std::uint64_t i = 0; i < space.dim - 1; ++i) {
                CHECK(std::abs(s[i] - Complex{ref.u, 0.0}) < 1e-12);
            }
            CHECK(std::abs(closed.unmarked_amp - ref.u) < 1e-12);
        }
    }
}

TEST_CASE("optimal_iterations reproduces the frozen table") {
    const std::pair<int, std::uint64_t> table[] = {
        {1, 1}, {2, 1}, {3, 2}, {4, 3}, {5, 4}, {6, 6},
        {7, 8}, {8, 12}, {10, 25}, {12, 50}, {16, 201},
    };
    for (const auto& [n, expected] : table) {
        CHECK(optimal_iterations(make_search_space(n, BasisIndex{0})) == expected);
    }
}

TEST_CASE("optimal_iterations attains the first-pass peak") {
    // sin^2(theta_k) keeps oscillating in k, and on a later pass a sample
    // can land nearer pi/2 than anything on the first. The claim about k*
    // is first-pass only: among all k with theta_k inside (0, pi), it
    // maximizes the success probability.
    for (int n = 1; n <= 10; ++n) {
        const SearchSpace space = make_search_space(n, BasisIndex{0});
        const std::uint64_t k_star = optimal_iterations(space);
        REQUIRE(iteration_angle(space, k_star) < std::numbers::pi);
        const double s_star = std::sin(iteration_angle(space, k_star));
        double best = 0.0;
        for (std::uint64_t k = 0; iteration_angle(space, k) < std::numbers::pi; ++k) {
            const double s = std::sin(iteration_angle(space, k));
            best = std::max(best, s * s);
        }
        CHECK(s_star * s_star >= best - 1e-12);
    }
}

TEST_CASE("success peaks near the optimum in actual simulation") {
    const SearchSpace space = make_search_space(6, BasisIndex{63});
    const std::uint64_t k_star = optimal_iterations(space);
    StateVector s = uniform_superposition(space);
    QueryLedger ledger;
    for (std::uint64_t k = 0; k < k_star; ++k) grover_step(s, space, ledger);
    CHECK(std::norm(s[63]) > 0.99);
}
