#pragma once

#include <cstdint>
#include <optional>

#include "fairucbe/errors.hpp"

namespace fairucbe {

/// Run constants derived from (T, kappa, k). All the probability knobs
/// (delta1, delta2, explore_prob) default to T^(-alpha/2).
struct Hyperparams {
    std::int64_t horizon_T = 0;
    double kappa = 0.0;
    double epsilon = 0.0;
    double alpha = 0.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double explore_prob = 0.0;
    double sufficiency_M = 0.0;
    int num_arms = 0;
};

/// Lower bound on epsilon: (1/log T) * log(log T / (2 log(18/11))).
/// Peaks at ~0.37350 around T ~ 14.55 and decays towards 0 for large T.
double epsilon_floor(double T);

/// Largest admissible alpha given epsilon and kappa:
/// min{2 - sqrt(2*epsilon + 1), (kappa - epsilon) / 2, 1}.
double alpha_ceiling(double epsilon, double kappa);

/// Throws constraint_error naming the violated inequality, if any.
void validate_hyperparams(const Hyperparams& hp);

/// Builds a Hyperparams from the run configuration. Without overrides,
/// epsilon = max(epsilon_floor * (1 + 1e-3), 1e-6) and alpha = 0.99 times
/// its ceiling. Throws constraint_error when no valid (epsilon, alpha)
/// exists (kappa at or below the epsilon floor).
Hyperparams derive_hyperparams(std::int64_t T, double kappa, int k,
                               std::optional<double> epsilon_override = std::nullopt,
                               std::optional<double> alpha_override = std::nullopt,
                               std::optional<double> delta2_override = std::nullopt);

} // namespace fairucbe
