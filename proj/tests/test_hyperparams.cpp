#include <doctest.h>

#include <cmath>

#include "fairucbe/hyperparams.hpp"

using namespace fairucbe;

TEST_CASE("epsilon_floor rejects horizons below 2") {
    CHECK_THROWS_AS(epsilon_floor(1.0), invalid_horizon_error);
    CHECK_THROWS_AS(epsilon_floor(0.0), invalid_horizon_error);
}

TEST_CASE("epsilon_floor attains its maximum near T ~ 14.55") {
    // T = exp(2 e log(18/11)) maximizes the floor at 1/(2 e log(18/11)).
    const double t_peak = std::exp(2.0 * std::exp(1.0) * std::log(18.0 / 11.0));
    CHECK(t_peak == doctest::Approx(14.5469268866).epsilon(1e-9));
    CHECK(epsilon_floor(t_peak) == doctest::Approx(0.37349949926887).epsilon(1e-10));
}

TEST_CASE("epsilon_floor frozen value at T = 1e6") {
    // Independently recomputed with 30-digit arithmetic.
    CHECK(epsilon_floor(1e6) == doctest::Approx(0.191158574150401).epsilon(1e-12));
}

TEST_CASE("epsilon_floor never exceeds 1/(2 e log(18/11))") {
    const double bound = 1.0 / (2.0 * std::exp(1.0) * std::log(18.0 / 11.0));
    for (double log_t = std::log(2.0); log_t < std::log(1e9); log_t += 0.01) {
        CHECK(epsilon_floor(std::exp(log_t)) <= bound);
    }
}

TEST_CASE("derive_hyperparams produces a valid parameter set") {
    const auto hp = derive_hyperparams(1000000, 2.0, 10);
    CHECK(hp.horizon_T == 1000000);
    CHECK(hp.num_arms == 10);
    CHECK(hp.epsilon > epsilon_floor(1e6));
    CHECK(hp.alpha > 0.0);
    CHECK(hp.alpha < alpha_ceiling(hp.epsilon, hp.kappa));
    CHECK(hp.kappa > 2.0 * hp.alpha + hp.epsilon);
    CHECK(hp.delta1 == doctest::Approx(std::pow(1e6, -hp.alpha / 2.0)));
    CHECK(hp.delta1 == hp.delta2);
    CHECK(hp.delta1 == hp.explore_prob);
    CHECK(hp.sufficiency_M ==
          doctest::Approx(std::pow(1e6, (hp.alpha / 2.0 + hp.epsilon) / (1.0 - hp.alpha))));
    CHECK_NOTHROW(validate_hyperparams(hp));
}

TEST_CASE("derive_hyperparams rejects infeasible kappa") {
    CHECK_THROWS_AS(derive_hyperparams(1000000, 1e-9, 10), constraint_error);
}

TEST_CASE("derive_hyperparams covers the large-horizon sweep settings") {
    // At T = 1e7 the epsilon floor is ~0.1734, so kappa down to 0.2 is
    // feasible (0.1 is not: it sits below the floor itself).
    for (double kappa : {0.2, 0.5, 1.0}) {
        const auto hp = derive_hyperparams(10000000, kappa, 10);
        CHECK_NOTHROW(validate_hyperparams(hp));
    }
    CHECK_THROWS_AS(derive_hyperparams(10000000, 0.1, 10), constraint_error);
}

TEST_CASE("overrides are validated against the invariants") {
    CHECK_NOTHROW(derive_hyperparams(10000, 2.0, 5, 0.3, 0.2));
    // epsilon below the floor
    CHECK_THROWS_AS(derive_hyperparams(10000, 2.0, 5, 0.1), constraint_error);
    // alpha above its ceiling
    CHECK_THROWS_AS(derive_hyperparams(10000, 2.0, 5, 0.3, 0.9), constraint_error);
    // delta2 outside (0, 1]
    CHECK_THROWS_AS(derive_hyperparams(10000, 2.0, 5, std::nullopt, std::nullopt, 1.5),
                    constraint_error);
}

TEST_CASE("bad arities are rejected") {
    CHECK_THROWS_AS(derive_hyperparams(1, 2.0, 5), invalid_horizon_error);
    CHECK_THROWS_AS(derive_hyperparams(10000, 2.0, 1), constraint_error);
    CHECK_THROWS_AS(derive_hyperparams(10000, -1.0, 5), constraint_error);
}
