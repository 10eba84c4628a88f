#include "fairucbe/environment.hpp"

#include <algorithm>
#include <cmath>

namespace fairucbe {

namespace {

constexpr double kMeanLo = 0.05;
constexpr double kMeanHi = 0.95;

double clamp_mean(double mu) { return std::clamp(mu, kMeanLo, kMeanHi); }

} // namespace

EnvState make_drifting_env(int k, std::int64_t T, double kappa, Rng& rng) {
    EnvState env;
    env.k = k;
    env.T = T;
    env.kappa = kappa;
    env.kind = DriftKind::random_walk;
    env.means.resize(static_cast<std::size_t>(k));
    env.directions.resize(static_cast<std::size_t>(k));
    std::uniform_real_distribution<double> mean_dist(kMeanLo, kMeanHi);
    std::bernoulli_distribution up(0.5);
    for (int i = 0; i < k; ++i) {
        env.means[static_cast<std::size_t>(i)] = mean_dist(rng);
        env.directions[static_cast<std::size_t>(i)] = up(rng) ? 1.0 : -1.0;
    }
    return env;
}

EnvState make_opposing_env(std::int64_t T, double kappa) {
    EnvState env;
    env.k = 2;
    env.T = T;
    env.kappa = kappa;
    env.kind = DriftKind::opposing;
    env.means = {kMeanHi, kMeanLo};
    env.directions = {-1.0, 1.0};
    return env;
}

EnvState make_stationary_env(int k, std::int64_t T, Rng& rng) {
    EnvState env = make_drifting_env(k, T, 1.0, rng);
    env.kind = DriftKind::frozen;
    return env;
}

void drift_step(EnvState& env, Rng& rng) {
    const double step_bound = std::pow(static_cast<double>(env.T), -env.kappa);
    switch (env.kind) {
        case DriftKind::random_walk: {
            std::uniform_real_distribution<double> step(0.0, step_bound);
            std::bernoulli_distribution keep(env.persistence_p);
            for (int i = 0; i < env.k; ++i) {
                auto idx = static_cast<std::size_t>(i);
                if (!keep(rng)) env.directions[idx] = -env.directions[idx];
                env.means[idx] = clamp_mean(env.means[idx] + env.directions[idx] * step(rng));
            }
            break;
        }
        case DriftKind::opposing:
            for (int i = 0; i < env.k; ++i) {
                auto idx = static_cast<std::size_t>(i);
                env.means[idx] = clamp_mean(env.means[idx] + env.directions[idx] * step_bound);
            }
            break;
        case DriftKind::frozen:
            break;
    }
    ++env.t;
}

double sample_reward(const EnvState& env, int arm, Rng& rng) {
    const double mu = env.means[static_cast<std::size_t>(arm)];
    // Beta(nu mu, nu (1 - mu)) via the two-gamma construction.
    std::gamma_distribution<double> ga(env.concentration_nu * mu, 1.0);
    std::gamma_distribution<double> gb(env.concentration_nu * (1.0 - mu), 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    const double sum = x + y;
    if (sum <= 0.0) return mu; // both gammas underflowed
    return x / sum;
}

std::vector<double> true_means(const EnvState& env) { return env.means; }

} // namespace fairucbe
