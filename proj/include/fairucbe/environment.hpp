#pragma once

#include <cstdint>
#include <vector>

#include "fairucbe/policy.hpp"

namespace fairucbe {

enum class DriftKind {
    random_walk, // direction persists with probability persistence_p, step ~ U[0, T^-kappa]
    opposing,    // two arms, deterministic drift of exactly T^-kappa in opposite directions
    frozen,      // stationary limit: means never move
};

/// Hidden ground truth. Policies never see this; auditors and the reward
/// sampler do.
struct EnvState {
    int k = 0;
    std::int64_t T = 0;
    double kappa = 0.0;
    double persistence_p = 0.8;
    double concentration_nu = 2.0;
    std::int64_t t = 1;
    DriftKind kind = DriftKind::random_walk;
    std::vector<double> means;
    std::vector<double> directions; // +1 up, -1 down
};

/// Means ~ U[0.05, 0.95] i.i.d., directions uniform in {-1, +1}.
EnvState make_drifting_env(int k, std::int64_t T, double kappa, Rng& rng);

/// Arm 0 starts at 0.95 and falls by T^-kappa per step, arm 1 starts at 0.05
/// and rises by the same amount, both clamped to [0.05, 0.95].
EnvState make_opposing_env(std::int64_t T, double kappa);

EnvState make_stationary_env(int k, std::int64_t T, Rng& rng);

/// Advance the means by one step and increment t.
void drift_step(EnvState& env, Rng& rng);

/// Beta(nu * mu, nu * (1 - mu)) draw for the arm's current mean mu.
double sample_reward(const EnvState& env, int arm, Rng& rng);

/// Snapshot of the current means (a copy).
std::vector<double> true_means(const EnvState& env);

} // namespace fairucbe
